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

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "qswitch/random.hpp"
#include "qswitch/switch.hpp"

namespace qswitch {
namespace {

constexpr double kPi = std::numbers::pi;
using oracle::kron;

// Diagonal R_Z(π/2) and R_X(π/2) written out by hand.
oracle::M rz_half() { return oracle::mat2(std::exp(-kI * kPi / 4.0), 0, 0, std::exp(kI * kPi / 4.0)); }
oracle::M rx_half() { return (oracle::I2() - kI * oracle::X()) / std::sqrt(2.0); }

void expect_plan_matches_oracle(const SynthesisPlan& plan, const oracle::M& target) {
  const auto [sp, sm] = oracle::branch_ops(plan.gate_a.matrix(), plan.gate_b.matrix(),
                                           plan.measurement_theta);
  const oracle::M pre = plan.pre.matrix();
  EXPECT_LT(oracle::phase_distance(plan.post_plus.matrix() * sp * pre, target), 1e-10);
  EXPECT_LT(oracle::phase_distance(plan.post_minus.matrix() * sm * pre, target), 1e-10);
}

TEST(Synthesize, CnotMatchesReferenceCircuit) {
  const SynthesisPlan plan = synthesize(preset(GatePreset::Cnot));
  const Complex w = std::exp(-kI * kPi / 4.0);
  EXPECT_LT(oracle::max_abs_diff(plan.pre.matrix(), kron(oracle::X(), oracle::Z())), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.gate_a.matrix(), kron(oracle::X(), oracle::Z())), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.gate_b.matrix(), kron(rz_half(), rx_half())), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.post_plus.matrix(), w * oracle::M::Identity(4, 4)), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.post_minus.matrix(), -w * kron(oracle::Z(), oracle::X())),
            1e-12);
  EXPECT_NEAR(plan.measurement_theta, kPi / 2, 1e-15);
  oracle::M cnot = oracle::M::Identity(4, 4);
  cnot.block(2, 2, 2, 2) = oracle::X();
  expect_plan_matches_oracle(plan, cnot);
}

TEST(Synthesize, CzMatchesReferenceCircuit) {
  const SynthesisPlan plan = synthesize(preset("cz"));
  const Complex w = std::exp(-kI * kPi / 4.0);
  EXPECT_LT(oracle::max_abs_diff(plan.pre.matrix(), kron(oracle::X(), oracle::X())), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.gate_a.matrix(), kron(oracle::X(), oracle::X())), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.gate_b.matrix(), kron(rz_half(), rz_half())), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.post_plus.matrix(), w * oracle::M::Identity(4, 4)), 1e-12);
  EXPECT_LT(oracle::max_abs_diff(plan.post_minus.matrix(), -w * kron(oracle::Z(), oracle::Z())),
            1e-12);
  oracle::M cz = oracle::M::Identity(4, 4);
  cz(3, 3) = -1;
  expect_plan_matches_oracle(plan, cz);
}

TEST(Synthesize, RandomSpecsAgainstOracle) {
  Rng rng = make_rng(31);
  for (int t = 0; t < 100; ++t) {
    const double alpha = uniform_real(rng, -2 * kPi, 2 * kPi);
    const double theta = uniform_real(rng, -2 * kPi, 2 * kPi);
    const BlochVector n = random_bloch(rng);
    const ControlledGateSpec spec(alpha, theta, n);
    const oracle::M target = oracle::cu(alpha, theta, n.x(), n.y(), n.z());
    EXPECT_LT(oracle::max_abs_diff(cu_matrix(spec), target), 1e-12);
    const SynthesisPlan plan = synthesize(spec);
    expect_plan_matches_oracle(plan, target);
    EXPECT_LT(distance_up_to_phase(plan.realized(true), cu_matrix(spec)), 1e-10);
    EXPECT_LT(distance_up_to_phase(plan.realized(false), cu_matrix(spec)), 1e-10);
    EXPECT_LT(oracle::max_abs_diff(cu_reference_decomposition(spec).product(), target), 1e-12);
  }
}

TEST(Synthesize, ExactOnBothBranchesWithoutPhaseFreedom) {
  Rng rng = make_rng(32);
  for (int t = 0; t < 50; ++t) {
    const ControlledGateSpec spec(uniform_real(rng, 0, 2 * kPi), uniform_real(rng, 0, 2 * kPi),
                                  random_bloch(rng));
    const SynthesisPlan plan = synthesize(spec);
    EXPECT_LT(oracle::max_abs_diff(plan.realized(true), cu_matrix(spec)), 1e-10);
    EXPECT_LT(oracle::max_abs_diff(plan.realized(false), cu_matrix(spec)), 1e-10);
  }
}

TEST(Synthesize, TrivialSpecGivesIdentity) {
  const SynthesisPlan plan = synthesize(ControlledGateSpec(0.0, 0.0, BlochVector::z_axis()));
  expect_plan_matches_oracle(plan, oracle::M::Identity(4, 4));
}

TEST(RotationCorrection, MapsOntoEntanglingRotation) {
  Rng rng = make_rng(33);
  for (int t = 0; t < 100; ++t) {
    const double theta = uniform_real(rng, -2 * kPi, 2 * kPi);
    const BlochVector n = random_bloch(rng);
    const ControlledGateSpec spec(0.3, theta, n);
    const SynthesisPlan plan = synthesize(spec);
    const oracle::M want = oracle::expm(-kI * (theta / 2) *
                                        kron(oracle::Z(), oracle::sigma(n.x(), n.y(), n.z())));
    const auto [sp, sm] = oracle::branch_ops(plan.gate_a.matrix(), plan.gate_b.matrix(), theta);
    EXPECT_LT(oracle::max_abs_diff(rotation_correction(spec, true).matrix() * sp *
                                       plan.pre.matrix(),
                                   want),
              1e-10);
    EXPECT_LT(oracle::max_abs_diff(rotation_correction(spec, false).matrix() * sm *
                                       plan.pre.matrix(),
                                   want),
              1e-10);
  }
}

TEST(OrderIdentities, HoldForRandomAxes) {
  Rng rng = make_rng(34);
  for (int t = 0; t < 100; ++t) {
    const BlochVector n = random_bloch(rng);
    EXPECT_LT(appendix_b_identities(n).max(), 1e-12);
  }
}

TEST(Barenco, PresetAgainstOracle) {
  Rng rng = make_rng(35);
  for (int t = 0; t < 50; ++t) {
    const double a = uniform_real(rng, 0, 2 * kPi);
    const double p = uniform_real(rng, 0, 2 * kPi);
    const double th = uniform_real(rng, 0, 2 * kPi);
    const ControlledGateSpec spec = preset_barenco(a, p, th);
    EXPECT_EQ(spec.perp(), BlochVector::z_axis());
    EXPECT_LT(oracle::max_abs_diff(barenco_matrix(a, p, th), oracle::barenco(a, p, th)), 1e-12);
    EXPECT_LT(oracle::max_abs_diff(cu_matrix(spec), oracle::barenco(a, p, th)), 1e-12);
    expect_plan_matches_oracle(synthesize(spec), oracle::barenco(a, p, th));
  }
}

TEST(Spec, Validation) {
  EXPECT_THROW(ControlledGateSpec(0, 0, BlochVector::z_axis(), BlochVector::z_axis()),
               std::invalid_argument);
  EXPECT_THROW(ControlledGateSpec(std::nan(""), 0, BlochVector::z_axis()), std::invalid_argument);
  EXPECT_THROW(preset("toffoli"), std::invalid_argument);
  EXPECT_EQ(preset("cnot").perp(), BlochVector::z_axis());
  EXPECT_EQ(preset("cz").perp(), BlochVector::x_axis());
}

TEST(Plan, ControlSideIndependentOfSpec) {
  const SynthesisPlan p1 = synthesize(ControlledGateSpec(0.1, 0.2, BlochVector::x_axis()));
  const SynthesisPlan p2 = synthesize(ControlledGateSpec(1.3, -2.2, BlochVector::y_axis()));
  EXPECT_EQ(p1.pre.control, p2.pre.control);
  EXPECT_EQ(p1.gate_a.control, p2.gate_a.control);
  EXPECT_EQ(p1.gate_b.control, p2.gate_b.control);
}

TEST(VerifySynthesis, ReportFields) {
  Rng rng = make_rng(36);
  const VerificationReport r = verify_synthesis(preset("cnot"), rng, 50, "cnot");
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.target_name, "cnot");
  EXPECT_EQ(r.trials, 50u);
  EXPECT_LE(r.residual_plus, 1e-10);
  EXPECT_LE(r.residual_minus, 1e-10);
  EXPECT_LE(r.eq59_residual, 1e-10);
  EXPECT_NEAR(r.branch_probabilities.first, 0.5, 1e-10);
  EXPECT_NEAR(r.branch_probabilities.second, 0.5, 1e-10);
  EXPECT_LE(r.max_infidelity, 1e-10);
  EXPECT_EQ(r.schmidt_rank_plus, 2);
  EXPECT_EQ(r.schmidt_rank_minus, 2);
}

TEST(VerifySynthesis, SameSeedSameReport) {
  Rng a = make_rng(5), b = make_rng(5);
  const ControlledGateSpec spec(0.4, 1.2, BlochVector::normalized(1, 2, 3));
  const VerificationReport ra = verify_synthesis(spec, a);
  const VerificationReport rb = verify_synthesis(spec, b);
  EXPECT_EQ(ra.max_infidelity, rb.max_infidelity);
  EXPECT_EQ(ra.branch_probabilities, rb.branch_probabilities);
}

}  // namespace
}  // namespace qswitch
