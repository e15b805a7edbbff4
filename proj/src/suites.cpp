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

#include "qswitch/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qswitch/linalg.hpp"
#include "qswitch/random.hpp"
#include "qswitch/switch.hpp"
#include "qswitch/synthesis.hpp"

namespace qswitch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPositivityFloor = -1e-9;
constexpr std::size_t kStateTrials = 100;
constexpr std::size_t kStateSpecs = 50;

// Tracks the worst value of one property across trials.
class Property {
 public:
  Property(std::string suite, std::string name, double threshold, bool at_most = true)
      : result_{std::move(suite), std::move(name),
                at_most ? 0.0 : std::numeric_limits<double>::infinity(), threshold, at_most, 0,
                false} {}

  void observe(double v) {
    if (std::isnan(v)) v = result_.at_most ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
    result_.value = result_.at_most ? std::max(result_.value, v) : std::min(result_.value, v);
    ++result_.trials;
  }

  PropertyResult finish() const {
    PropertyResult r = result_;
    r.passed = r.trials > 0 &&
               (r.at_most ? r.value <= r.threshold : r.value >= r.threshold);
    return r;
  }

 private:
  PropertyResult result_;
};

ComplexMatrix commuting_partner(const ComplexMatrix& basis, Rng& rng) {
  const auto d = basis.rows();
  ComplexVector phases(d);
  for (Eigen::Index i = 0; i < d; ++i) phases(i) = std::polar(1.0, uniform_real(rng, 0, 2 * kPi));
  return basis * phases.asDiagonal() * basis.adjoint();
}

bool commutes(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b - b * a).norm() <= 1e-8;
}

ControlledGateSpec random_spec(Rng& rng) {
  const double alpha = uniform_real(rng, 0.0, 2 * kPi);
  const double theta = uniform_real(rng, -2 * kPi, 2 * kPi);
  return ControlledGateSpec(alpha, theta, random_bloch(rng));
}

}  // namespace

std::vector<PropertyResult> run_switch_suite(const SuiteOptions& options) {
  const std::string suite = "switch";
  Rng rng = make_rng(options.seed, 1);
  Property unitarity(suite, "switch_unitary.unitarity", options.tolerance);
  Property pauli_form(suite, "switch_unitary.pauli_form_matches_blocks", kIdentityTolerance);
  Property plus_control(suite, "apply_switch.plus_control_expansion", kIdentityTolerance);
  Property prob_sum(suite, "measure_ancilla.probability_sum", options.tolerance);
  Property plus_branch(suite, "measure_ancilla.plus_branch_state", options.tolerance);
  Property completeness(suite, "branch_gates.completeness", options.tolerance);
  Property tensor_rule(suite, "branch_gates_tensor.matches_tensored_inputs", kIdentityTolerance);

  const StateVector control = StateVector::plus();
  const StateVector control_minus = StateVector::minus();
  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t qubits = 1 + t % 3;
    const std::size_t dim = std::size_t{1} << qubits;
    const ComplexMatrix a = random_unitary(dim, rng);
    const ComplexMatrix b = random_unitary(dim, rng);
    const double theta = uniform_real(rng, -2 * kPi, 2 * kPi);

    const SwitchJoint joint = switch_unitary(a, b);
    unitarity.observe(unitarity_residual(joint.matrix));
    pauli_form.observe((switch_unitary_pauli_form(a, b) - joint.matrix).norm());

    const StateVector psi = random_state(qubits, rng);
    const StateVector out = apply_switch(joint, psi, control);
    const ComplexVector expected =
        0.5 * (tensor((a * b + b * a) * psi.amplitudes(), control.amplitudes()) +
               tensor((a * b - b * a) * psi.amplitudes(), control_minus.amplitudes()));
    plus_control.observe((out.amplitudes() - expected).norm());

    const auto [plus, minus] = measure_ancilla(out, theta);
    prob_sum.observe(std::abs(plus.probability + minus.probability - 1.0));
    const auto [s_plus, s_minus] = branch_gates(a, b, theta);
    if (plus.post_state) {
      const ComplexVector direct = (s_plus * psi.amplitudes()).normalized();
      plus_branch.observe(1.0 - fidelity(direct, plus.post_state->amplitudes()));
    }
    completeness.observe(
        (s_plus.adjoint() * s_plus + s_minus.adjoint() * s_minus - 2.0 * identity(dim)).norm());

    std::vector<ComplexMatrix> a_list;
    std::vector<ComplexMatrix> b_list;
    for (std::size_t q = 0; q < qubits; ++q) {
      a_list.push_back(random_unitary(2, rng));
      b_list.push_back(random_unitary(2, rng));
    }
    const auto [t_plus, t_minus] = branch_gates_tensor(a_list, b_list, theta);
    const auto [d_plus, d_minus] = branch_gates(tensor_all(a_list), tensor_all(b_list), theta);
    tensor_rule.observe(std::max((t_plus - d_plus).norm(), (t_minus - d_minus).norm()));
  }
  return {unitarity.finish(), pauli_form.finish(), plus_control.finish(), prob_sum.finish(),
          plus_branch.finish(), completeness.finish(), tensor_rule.finish()};
}

std::vector<PropertyResult> run_synthesis_suite(const SuiteOptions& options) {
  const std::string suite = "synthesis";
  Rng rng = make_rng(options.seed, 2);
  Property reconstruction(suite, "plan.reconstruction_both_branches", options.tolerance);
  Property rotation_identity(suite, "rotation_correction.maps_onto_rzn", options.tolerance);
  Property reference(suite, "reference_decomposition.reconstructs_cu", kIdentityTolerance);
  Property order_ids(suite, "order_identities.products", kIdentityTolerance);
  Property control_side(suite, "plan.control_gates_independent_of_spec", kIdentityTolerance);
  Property branch_unitary(suite, "plan.branch_gates_unitary", options.tolerance);
  Property probability(suite, "pipeline.branch_probability_half", options.tolerance);
  Property end_to_end(suite, "pipeline.state_infidelity", options.tolerance);

  const ComplexMatrix x = pauli_x();
  const ComplexMatrix rz_quarter = rotation(BlochVector::z_axis(), kPi / 2);
  const std::size_t state_specs = std::min(options.trials, kStateSpecs);

  for (std::size_t t = 0; t < options.trials; ++t) {
    const ControlledGateSpec spec = random_spec(rng);
    const SynthesisPlan plan = synthesize(spec);
    const ComplexMatrix target = cu_matrix(spec);
    reconstruction.observe(std::max((plan.realized(true) - target).norm(),
                                    (plan.realized(false) - target).norm()));

    const auto [s_plus, s_minus] = plan.branch_gates();
    const ComplexMatrix pre = plan.pre.matrix();
    const ComplexMatrix rzn =
        two_qubit_rotation(BlochVector::z_axis(), spec.axis(), spec.theta());
    rotation_identity.observe(
        std::max((rotation_correction(spec, true).matrix() * s_plus * pre - rzn).norm(),
                 (rotation_correction(spec, false).matrix() * s_minus * pre - rzn).norm()));

    reference.observe((cu_reference_decomposition(spec).product() - target).norm());
    order_ids.observe(appendix_b_identities(spec.axis()).max());
    control_side.observe(std::max({(plan.gate_a.control - x).norm(),
                                   (plan.gate_b.control - rz_quarter).norm(),
                                   (plan.pre.control - x).norm()}));
    branch_unitary.observe(std::max(unitarity_residual(s_plus), unitarity_residual(s_minus)));

    if (t < state_specs) {
      const VerificationReport report = verify_synthesis(spec, rng, kStateTrials);
      probability.observe(report.max_probability_deviation);
      end_to_end.observe(report.max_infidelity);
    }
  }
  return {reconstruction.finish(), rotation_identity.finish(), reference.finish(),
          order_ids.finish(),       control_side.finish(),      branch_unitary.finish(),
          probability.finish(),    end_to_end.finish()};
}

std::vector<PropertyResult> run_corollary_suite(const SuiteOptions& options) {
  const std::string suite = "corollary";
  Rng rng = make_rng(options.seed, 3);
  Property noncommuting(suite, "noncommuting_pairs.min_rank_theta_pi_over_3", 2.0, false);
  Property generic_theta(suite, "noncommuting_pairs.min_rank_generic_theta", 2.0, false);
  Property separable_theta(suite, "theta_multiple_of_pi.max_rank", 1.0);
  Property commuting(suite, "commuting_pairs.max_rank", 1.0);
  Property one_commuting(suite, "one_commuting_pair.max_rank", 1.0);
  Property synthesis_boundary(suite, "synthesis_theta_zero.max_rank", 1.0);

  auto rank_pair = [](const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b,
                      double theta, bool want_min) {
    const auto [s_plus, s_minus] = branch_gates_tensor(a, b, theta);
    const int rp = operator_schmidt_rank(s_plus);
    const int rm = operator_schmidt_rank(s_minus);
    return static_cast<double>(want_min ? std::min(rp, rm) : std::max(rp, rm));
  };

  for (std::size_t t = 0; t < options.trials; ++t) {
    std::vector<ComplexMatrix> a{random_unitary(2, rng), random_unitary(2, rng)};
    std::vector<ComplexMatrix> b{random_unitary(2, rng), random_unitary(2, rng)};
    if (commutes(a[0], b[0]) || commutes(a[1], b[1])) continue;
    noncommuting.observe(rank_pair(a, b, kPi / 3, true));

    double theta = uniform_real(rng, -2 * kPi, 2 * kPi);
    if (std::abs(std::sin(theta / 2) * std::cos(theta / 2)) < 1e-3) theta = 1.0;
    generic_theta.observe(rank_pair(a, b, theta, true));

    separable_theta.observe(std::max({rank_pair(a, b, 0.0, false), rank_pair(a, b, kPi, false),
                                      rank_pair(a, b, -kPi, false),
                                      rank_pair(a, b, 2 * kPi, false)}));

    const ComplexMatrix v0 = random_unitary(2, rng);
    const ComplexMatrix v1 = random_unitary(2, rng);
    const std::vector<ComplexMatrix> ca{commuting_partner(v0, rng), commuting_partner(v1, rng)};
    const std::vector<ComplexMatrix> cb{commuting_partner(v0, rng), commuting_partner(v1, rng)};
    commuting.observe(rank_pair(ca, cb, theta, false));

    const std::vector<ComplexMatrix> ma{a[0], ca[1]};
    const std::vector<ComplexMatrix> mb{b[0], cb[1]};
    one_commuting.observe(rank_pair(ma, mb, theta, false));

    const ControlledGateSpec flat(uniform_real(rng, 0, 2 * kPi), 0.0, random_bloch(rng));
    const auto [s_plus, s_minus] = synthesize(flat).branch_gates();
    synthesis_boundary.observe(static_cast<double>(
        std::max(operator_schmidt_rank(s_plus), operator_schmidt_rank(s_minus))));
  }
  return {noncommuting.finish(), generic_theta.finish(),  separable_theta.finish(),
          commuting.finish(),    one_commuting.finish(), synthesis_boundary.finish()};
}

std::vector<PropertyResult> run_channels_suite(const SuiteOptions& options) {
  const std::string suite = "channels";
  Rng rng = make_rng(options.seed, 4);
  Property kraus_form(suite, "switch_channel.matches_kraus_construction", kIdentityTolerance);
  Property trace(suite, "switch_channel.trace_preserving", options.tolerance);
  Property choi(suite, "switch_channel.choi_min_eigenvalue", kPositivityFloor, false);
  Property unitary_form(suite, "switch_channel.unitary_channels_match_joint", kIdentityTolerance);
  Property n_trace(suite, "switch_channel_n.trace_preserving_n3", options.tolerance);
  Property n_choi(suite, "switch_channel_n.choi_min_eigenvalue_n3", kPositivityFloor, false);

  for (std::size_t t = 0; t < options.trials; ++t) {
    const std::size_t rank_a = 1 + t % 2;
    const std::size_t rank_b = 1 + (t / 2) % 2;
    const KrausChannel chan_a = KrausChannel::random(2, rank_a, rng);
    const KrausChannel chan_b = KrausChannel::random(2, rank_b, rng);
    const DensityMatrix rho = random_density(2, rng);
    const DensityMatrix omega = random_density(2, rng);

    const DensityMatrix out = switch_channel(chan_a, chan_b, rho, omega);
    const KrausChannel pair[] = {chan_a, chan_b};
    const ComplexMatrix direct = switch_channel_n_map(pair, rho.matrix(), omega.matrix());
    kraus_form.observe((out.matrix() - direct).norm());
    trace.observe(std::abs(out.matrix().trace() - Complex{1.0}));

    const ComplexMatrix& w = omega.matrix();
    choi.observe(min_eigenvalue_hermitian(choi_matrix(
        [&](const ComplexMatrix& r) { return switch_channel_map(chan_a, chan_b, r, w); }, 2)));

    const ComplexMatrix ua = random_unitary(2, rng);
    const ComplexMatrix ub = random_unitary(2, rng);
    const ComplexMatrix s = switch_unitary(ua, ub).matrix;
    const DensityMatrix conj = switch_channel(KrausChannel::unitary(ua), KrausChannel::unitary(ub),
                                              rho, omega);
    unitary_form.observe((conj.matrix() - s * tensor(rho.matrix(), w) * s.adjoint()).norm());

    if (t % 4 == 0) {
      const KrausChannel triple[] = {chan_a, chan_b, KrausChannel::random(2, 2, rng)};
      const DensityMatrix control = uniform_control_state(3);
      const DensityMatrix n_out = switch_channel_n(triple, rho, control);
      n_trace.observe(std::abs(n_out.matrix().trace() - Complex{1.0}));
      n_choi.observe(min_eigenvalue_hermitian(choi_matrix(
          [&](const ComplexMatrix& r) {
            return switch_channel_n_map(triple, r, control.matrix());
          },
          2)));
    }
  }
  return {kraus_form.finish(),   trace.finish(),   choi.finish(),
          unitary_form.finish(), n_trace.finish(), n_choi.finish()};
}

bool is_suite_name(std::string_view name) {
  return name == "switch" || name == "synthesis" || name == "corollary" || name == "channels" ||
         name == "all";
}

std::vector<PropertyResult> run_suite(std::string_view name, const SuiteOptions& options) {
  if (!is_suite_name(name)) {
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  }
  std::vector<PropertyResult> out;
  auto append = [&out](std::vector<PropertyResult> r) {
    out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  };
  if (name == "switch" || name == "all") append(run_switch_suite(options));
  if (name == "synthesis" || name == "all") append(run_synthesis_suite(options));
  if (name == "corollary" || name == "all") append(run_corollary_suite(options));
  if (name == "channels" || name == "all") append(run_channels_suite(options));
  return out;
}

}  // namespace qswitch
