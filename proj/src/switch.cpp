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

#include "qswitch/switch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qswitch {

namespace {

constexpr std::size_t kMaxSwitchedChannels = 4;

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(what) + ": operands must be square with equal dims");
  }
}

ComplexMatrix projector(Eigen::Index dim, Eigen::Index k) {
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  p(k, k) = 1.0;
  return p;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw std::invalid_argument("Kraus channel needs an operator");
  const auto rows = operators_.front().rows();
  const auto cols = operators_.front().cols();
  ComplexMatrix completeness = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : operators_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw std::invalid_argument("Kraus operators have inconsistent dimensions");
    }
    completeness += k.adjoint() * k;
  }
  if ((completeness - ComplexMatrix::Identity(cols, cols)).norm() > kUnitaryTolerance) {
    throw std::invalid_argument("Kraus operators violate completeness (not trace preserving)");
  }
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

KrausChannel KrausChannel::random(std::size_t dim, std::size_t rank, Rng& rng) {
  if (dim == 0 || rank == 0) throw std::invalid_argument("random channel needs dim, rank >= 1");
  // The first `dim` columns of a Haar unitary on rank*dim form an isometry V;
  // its row blocks are Kraus operators with sum K† K = V† V = I.
  const ComplexMatrix u = random_unitary(dim * rank, rng);
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> ops;
  ops.reserve(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    ops.emplace_back(u.block(static_cast<Eigen::Index>(r) * d, 0, d, d));
  }
  return KrausChannel(std::move(ops));
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(output_dim()),
                                          static_cast<Eigen::Index>(output_dim()));
  for (const auto& k : operators_) out += k * rho * k.adjoint();
  return out;
}

const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

SwitchJoint switch_unitary(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "switch_unitary");
  if (!is_unitary(a) || !is_unitary(b)) {
    throw std::invalid_argument("switch_unitary: inputs must be unitary");
  }
  const ComplexMatrix joint =
      tensor(a * b, projector(2, 0)) + tensor(b * a, projector(2, 1));
  return SwitchJoint{static_cast<std::size_t>(a.rows()), joint};
}

ComplexMatrix switch_unitary_pauli_form(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix anti = a * b + b * a;
  const ComplexMatrix comm = a * b - b * a;
  return 0.5 * (tensor(anti, identity(2)) + tensor(comm, pauli_z()));
}

StateVector apply_switch(const SwitchJoint& joint, const StateVector& psi,
                         const StateVector& omega) {
  if (omega.dim() != 2) throw std::invalid_argument("apply_switch: control must be one qubit");
  if (psi.dim() != joint.target_dim) {
    throw std::invalid_argument("apply_switch: target dimension mismatch");
  }
  const ComplexVector in = tensor(psi.amplitudes(), omega.amplitudes());
  ComplexVector out = joint.matrix * in;
  return StateVector(std::move(out));
}

ComplexVector ancilla_ket(Branch branch, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  ComplexVector ket(2);
  if (branch == Branch::Plus) {
    ket << c, -kI * s;
  } else {
    ket << -kI * s, c;
  }
  return ket;
}

ComplexVector project_last_qubit(const ComplexVector& amplitudes, Branch branch, double theta) {
  if (amplitudes.size() < 2 || amplitudes.size() % 2 != 0) {
    throw std::invalid_argument("project_last_qubit: need at least one qubit");
  }
  // Row functional <f| = ket†.
  const ComplexVector ket = ancilla_ket(branch, theta);
  const Complex f0 = std::conj(ket(0));
  const Complex f1 = std::conj(ket(1));
  const Eigen::Index half = amplitudes.size() / 2;
  ComplexVector out(half);
  for (Eigen::Index i = 0; i < half; ++i) {
    out(i) = f0 * amplitudes(2 * i) + f1 * amplitudes(2 * i + 1);
  }
  return out;
}

std::pair<MeasurementOutcome, MeasurementOutcome> measure_ancilla(const StateVector& state,
                                                                  double theta) {
  if (state.num_qubits() < 1) throw std::invalid_argument("measure_ancilla: no ancilla qubit");
  auto outcome = [&](Branch branch) {
    ComplexVector projected = project_last_qubit(state.amplitudes(), branch, theta);
    MeasurementOutcome m;
    m.branch = branch;
    m.probability = std::clamp(projected.squaredNorm(), 0.0, 1.0);
    if (m.probability > kZeroProbability) {
      projected /= std::sqrt(projected.squaredNorm());
      m.post_state = StateVector(std::move(projected));
    } else {
      m.probability = 0.0;
    }
    return m;
  };
  return {outcome(Branch::Plus), outcome(Branch::Minus)};
}

std::pair<ComplexMatrix, ComplexMatrix> branch_gates(const ComplexMatrix& a,
                                                     const ComplexMatrix& b, double theta) {
  require_same_square(a, b, "branch_gates");
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const ComplexMatrix ab = a * b;
  const ComplexMatrix ba = b * a;
  return {c * ab + kI * s * ba, kI * s * ab + c * ba};
}

std::pair<ComplexMatrix, ComplexMatrix> branch_gates_tensor(std::span<const ComplexMatrix> a_list,
                                                            std::span<const ComplexMatrix> b_list,
                                                            double theta) {
  if (a_list.empty() || a_list.size() != b_list.size()) {
    throw std::invalid_argument("branch_gates_tensor: lists must be non-empty and equal length");
  }
  std::vector<ComplexMatrix> ab_factors;
  std::vector<ComplexMatrix> ba_factors;
  for (std::size_t i = 0; i < a_list.size(); ++i) {
    require_same_square(a_list[i], b_list[i], "branch_gates_tensor");
    ab_factors.push_back(a_list[i] * b_list[i]);
    ba_factors.push_back(b_list[i] * a_list[i]);
  }
  const ComplexMatrix ab = tensor_all(ab_factors);
  const ComplexMatrix ba = tensor_all(ba_factors);
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {c * ab + kI * s * ba, kI * s * ab + c * ba};
}

ComplexMatrix switch_channel_map(const KrausChannel& chan_a, const KrausChannel& chan_b,
                                 const ComplexMatrix& rho, const ComplexMatrix& omega) {
  const auto d = static_cast<Eigen::Index>(chan_a.input_dim());
  if (chan_a.output_dim() != chan_a.input_dim() || chan_b.input_dim() != chan_a.input_dim() ||
      chan_b.output_dim() != chan_a.input_dim()) {
    throw std::invalid_argument("switch_channel: channels must act on the same space");
  }
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("switch_channel: rho dimension mismatch");
  }
  if (omega.rows() != 2 || omega.cols() != 2) {
    throw std::invalid_argument("switch_channel: omega must be a qubit operator");
  }
  const ComplexMatrix z = pauli_z();
  const ComplexMatrix omega_z = omega * z;
  const ComplexMatrix z_omega = z * omega;
  const ComplexMatrix z_omega_z = z * omega * z;

  ComplexMatrix out = ComplexMatrix::Zero(2 * d, 2 * d);
  for (const auto& ai : chan_a.operators()) {
    for (const auto& bj : chan_b.operators()) {
      const ComplexMatrix anti = ai * bj + bj * ai;
      const ComplexMatrix comm = ai * bj - bj * ai;
      out += tensor(anti * rho * anti.adjoint(), omega);
      out += tensor(anti * rho * comm.adjoint(), omega_z);
      out += tensor(comm * rho * anti.adjoint(), z_omega);
      out += tensor(comm * rho * comm.adjoint(), z_omega_z);
    }
  }
  return 0.25 * out;
}

DensityMatrix switch_channel(const KrausChannel& chan_a, const KrausChannel& chan_b,
                             const DensityMatrix& rho, const DensityMatrix& omega) {
  ComplexMatrix out = switch_channel_map(chan_a, chan_b, rho.matrix(), omega.matrix());
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out));
}

std::size_t num_orderings(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<std::vector<std::size_t>> orderings(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

ComplexMatrix switch_channel_n_map(std::span<const KrausChannel> channels,
                                   const ComplexMatrix& rho, const ComplexMatrix& omega) {
  const std::size_t n = channels.size();
  if (n < 1 || n > kMaxSwitchedChannels) {
    throw std::invalid_argument("switch_channel_n supports 1 to 4 channels, got " +
                                std::to_string(n));
  }
  const auto d = static_cast<Eigen::Index>(channels.front().input_dim());
  for (const auto& ch : channels) {
    if (static_cast<Eigen::Index>(ch.input_dim()) != d ||
        static_cast<Eigen::Index>(ch.output_dim()) != d) {
      throw std::invalid_argument("switch_channel_n: channels must act on the same space");
    }
  }
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("switch_channel_n: rho dimension mismatch");
  }
  const auto orders = orderings(n);
  const auto control_dim = static_cast<Eigen::Index>(orders.size());
  if (omega.rows() != control_dim || omega.cols() != control_dim) {
    throw std::invalid_argument("switch_channel_n: omega must have dimension N!");
  }

  const ComplexMatrix input = tensor(rho, omega);
  ComplexMatrix out = ComplexMatrix::Zero(d * control_dim, d * control_dim);

  // Odometer over Kraus multi-indices (i_1, ..., i_N).
  std::vector<std::size_t> index(n, 0);
  for (;;) {
    ComplexMatrix kraus = ComplexMatrix::Zero(d * control_dim, d * control_dim);
    for (Eigen::Index k = 0; k < control_dim; ++k) {
      ComplexMatrix product = ComplexMatrix::Identity(d, d);
      for (const std::size_t slot : orders[static_cast<std::size_t>(k)]) {
        product = product * channels[slot].operators()[index[slot]];
      }
      kraus += tensor(product, projector(control_dim, k));
    }
    out += kraus * input * kraus.adjoint();

    std::size_t pos = 0;
    while (pos < n && ++index[pos] == channels[pos].operators().size()) {
      index[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

DensityMatrix switch_channel_n(std::span<const KrausChannel> channels, const DensityMatrix& rho,
                               const DensityMatrix& omega) {
  ComplexMatrix out = switch_channel_n_map(channels, rho.matrix(), omega.matrix());
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out));
}

DensityMatrix uniform_control_state(std::size_t num_channels) {
  const auto dim = static_cast<Eigen::Index>(num_orderings(num_channels));
  const ComplexVector u = ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return DensityMatrix(u * u.adjoint());
}

}  // namespace qswitch
