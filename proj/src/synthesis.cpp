// Copyright 2026 The qswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qswitch/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qswitch/switch.hpp"

namespace qswitch {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

}  // namespace

ControlledGateSpec::ControlledGateSpec(double alpha, double theta, BlochVector axis)
    : ControlledGateSpec(alpha, theta, axis, canonical_perp(axis)) {}

ControlledGateSpec::ControlledGateSpec(double alpha, double theta, BlochVector axis,
                                       BlochVector perp)
    : alpha_(alpha), theta_(theta), axis_(axis), perp_(perp) {
  if (!std::isfinite(alpha) || !std::isfinite(theta)) {
    throw std::invalid_argument("controlled gate angles must be finite");
  }
  if (std::abs(axis.dot(perp)) > kUnitaryTolerance) {
    throw std::invalid_argument("perpendicular axis is not orthogonal to the rotation axis");
  }
}

std::pair<ComplexMatrix, ComplexMatrix> SynthesisPlan::branch_gates() const {
  return qswitch::branch_gates(gate_a.matrix(), gate_b.matrix(), measurement_theta);
}

ComplexMatrix SynthesisPlan::realized(bool plus_branch) const {
  const auto [s_plus, s_minus] = branch_gates();
  const ComplexMatrix& s = plus_branch ? s_plus : s_minus;
  const Correction& f = plus_branch ? post_plus : post_minus;
  return f.matrix() * s * pre.matrix();
}

double AppendixIdentityResiduals::max() const {
  return std::max({control_ab, target_ab, control_ba, target_ba});
}

ComplexMatrix controlled_block(const ControlledGateSpec& spec) {
  const Complex global = std::polar(1.0, spec.alpha());
  return global * (std::cos(spec.theta()) * identity(2) +
                   kI * std::sin(spec.theta()) * bloch_dot(spec.axis()));
}

ComplexMatrix cu_matrix(const ControlledGateSpec& spec) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = identity(2);
  m.block(2, 2, 2, 2) = controlled_block(spec);
  return m;
}

ReferenceDecomposition cu_reference_decomposition(const ControlledGateSpec& spec) {
  return ReferenceDecomposition{
      std::polar(1.0, spec.alpha() / 2),
      tensor(rotation(BlochVector::z_axis(), spec.alpha()), rotation(spec.axis(), -spec.theta())),
      two_qubit_rotation(BlochVector::z_axis(), spec.axis(), spec.theta()),
  };
}

SynthesisPlan synthesize(const ControlledGateSpec& spec) {
  const BlochVector z = BlochVector::z_axis();
  const ComplexMatrix perp_sigma = bloch_dot(spec.perp());
  const double alpha = spec.alpha();
  const double theta = spec.theta();
  const Complex phase = std::polar(1.0, alpha / 2);

  return SynthesisPlan{
      spec,
      LocalGate{pauli_x(), perp_sigma},
      LocalGate{pauli_x(), perp_sigma},
      LocalGate{rotation(z, kHalfPi), rotation(spec.axis(), kHalfPi)},
      Correction{phase, LocalGate{rotation(z, alpha + kHalfPi),
                                  rotation(spec.axis(), -theta + kHalfPi)}},
      Correction{phase, LocalGate{rotation(z, alpha - kHalfPi),
                                  rotation(spec.axis(), -theta - kHalfPi)}},
      theta,
  };
}

LocalGate rotation_correction(const ControlledGateSpec& spec, bool plus_branch) {
  const double angle = plus_branch ? kHalfPi : -kHalfPi;
  return LocalGate{rotation(BlochVector::z_axis(), angle), rotation(spec.axis(), angle)};
}

ControlledGateSpec preset_barenco(double alpha_b, double phi_b, double theta_b) {
  return ControlledGateSpec(alpha_b, -theta_b, BlochVector(std::cos(phi_b), std::sin(phi_b), 0.0),
                            BlochVector::z_axis());
}

ComplexMatrix barenco_matrix(double alpha_b, double phi_b, double theta_b) {
  const BlochVector n(std::cos(phi_b), std::sin(phi_b), 0.0);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = identity(2);
  m.block(2, 2, 2, 2) = std::polar(1.0, alpha_b) * rotation(n, 2 * theta_b);
  return m;
}

ControlledGateSpec preset(GatePreset name) {
  switch (name) {
    case GatePreset::Cnot:
      return ControlledGateSpec(-kHalfPi, kHalfPi, BlochVector::x_axis(), BlochVector::z_axis());
    case GatePreset::Cz:
      return ControlledGateSpec(-kHalfPi, kHalfPi, BlochVector::z_axis(), BlochVector::x_axis());
  }
  throw std::invalid_argument("unknown gate preset");
}

ControlledGateSpec preset(std::string_view name) {
  if (name == "cnot") return preset(GatePreset::Cnot);
  if (name == "cz") return preset(GatePreset::Cz);
  throw std::invalid_argument("unknown gate preset '" + std::string(name) + "'");
}

VerificationReport verify_synthesis(const ControlledGateSpec& spec, Rng& rng, std::size_t trials,
                                    std::string target_name, double tolerance) {
  VerificationReport report;
  report.target_name = std::move(target_name);
  report.trials = trials;
  report.tolerance = tolerance;

  const SynthesisPlan plan = synthesize(spec);
  const ComplexMatrix target = cu_matrix(spec);
  const auto [s_plus, s_minus] = plan.branch_gates();
  const ComplexMatrix pre = plan.pre.matrix();

  report.residual_plus = distance_up_to_phase(plan.post_plus.matrix() * s_plus * pre, target);
  report.residual_minus = distance_up_to_phase(plan.post_minus.matrix() * s_minus * pre, target);

  const ComplexMatrix rzn = two_qubit_rotation(BlochVector::z_axis(), spec.axis(), spec.theta());
  report.eq59_residual = std::max(
      distance_up_to_phase(rotation_correction(spec, true).matrix() * s_plus * pre, rzn),
      distance_up_to_phase(rotation_correction(spec, false).matrix() * s_minus * pre, rzn));

  report.branch_unitarity_residual =
      std::max(unitarity_residual(s_plus), unitarity_residual(s_minus));
  report.schmidt_rank_plus = operator_schmidt_rank(s_plus);
  report.schmidt_rank_minus = operator_schmidt_rank(s_minus);

  const SwitchJoint joint = switch_unitary(plan.gate_a.matrix(), plan.gate_b.matrix());
  const StateVector control = StateVector::plus();
  const ComplexMatrix f_plus = plan.post_plus.matrix();
  const ComplexMatrix f_minus = plan.post_minus.matrix();

  for (std::size_t t = 0; t < trials; ++t) {
    const StateVector psi = random_state(2, rng);
    const ComplexVector expected = target * psi.amplitudes();
    const StateVector prepared(pre * psi.amplitudes());
    const auto [plus, minus] =
        measure_ancilla(apply_switch(joint, prepared, control), plan.measurement_theta);

    const double deviation = std::abs(plus.probability - 0.5);
    if (t == 0 || deviation > report.max_probability_deviation) {
      report.max_probability_deviation = deviation;
      report.branch_probabilities = {plus.probability, minus.probability};
    }
    for (const MeasurementOutcome* outcome : {&plus, &minus}) {
      if (!outcome->post_state) {
        report.max_infidelity = 1.0;
        continue;
      }
      const ComplexMatrix& f = outcome->branch == Branch::Plus ? f_plus : f_minus;
      const ComplexVector corrected = f * outcome->post_state->amplitudes();
      report.max_infidelity =
          std::max(report.max_infidelity, 1.0 - fidelity(expected, corrected));
    }
  }

  report.passed = report.residual_plus <= tolerance && report.residual_minus <= tolerance &&
                  report.eq59_residual <= tolerance &&
                  report.max_probability_deviation <= tolerance &&
                  report.max_infidelity <= tolerance;
  return report;
}

AppendixIdentityResiduals appendix_b_identities(const BlochVector& n) {
  return appendix_b_identities(n, canonical_perp(n));
}

AppendixIdentityResiduals appendix_b_identities(const BlochVector& n, const BlochVector& perp) {
  const BlochVector z = BlochVector::z_axis();
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix p = bloch_dot(perp);
  const ComplexMatrix rz = rotation(z, kHalfPi);
  const ComplexMatrix rn = rotation(n, kHalfPi);
  AppendixIdentityResiduals r;
  r.control_ab = (x * rz * x - rotation(z, -kHalfPi)).norm();
  r.target_ab = (p * rn * p - rotation(n, -kHalfPi)).norm();
  r.control_ba = (rz * x * x - rz).norm();
  r.target_ba = (rn * p * p - rn).norm();
  return r;
}

}  // namespace qswitch
