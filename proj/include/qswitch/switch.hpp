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

// Quantum switch supermap.
//
// The switch places operations in a coherent superposition of application
// orders. Its control system is always the last tensor factor: a joint
// operator on target⊗control is block diagonal in the control basis, with
// block k holding the product of the operations in the k-th order.

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/random.hpp"

namespace qswitch {

/// Quantum channel in Kraus form, sum_i K_i† K_i = I within 1e-10.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  static KrausChannel unitary(const ComplexMatrix& u);
  /// Random channel with `rank` Kraus operators, cut from a Haar isometry.
  static KrausChannel random(std::size_t dim, std::size_t rank, Rng& rng);

  std::size_t input_dim() const { return static_cast<std::size_t>(operators_.front().cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(operators_.front().rows()); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }

  /// sum_i K_i rho K_i†; linear, so it accepts any operator of matching dim.
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  std::vector<ComplexMatrix> operators_;
};

/// Joint unitary on target⊗control realizing both orders of two gates.
struct SwitchJoint {
  std::size_t target_dim = 0;
  ComplexMatrix matrix;
};

enum class Branch { Plus, Minus };

/// Branch probabilities at or below this are rounding residue of an exact
/// cancellation and are reported as 0.
inline constexpr double kZeroProbability = 1e-20;

const char* to_string(Branch b);

struct MeasurementOutcome {
  Branch branch = Branch::Plus;
  double probability = 0.0;
  /// Absent when the branch has zero probability.
  std::optional<StateVector> post_state;
};

/// AB ⊗ |0><0| + BA ⊗ |1><1|. Throws on non-unitary or mismatched inputs.
SwitchJoint switch_unitary(const ComplexMatrix& a, const ComplexMatrix& b);

/// The same operator assembled as ½[{A,B} ⊗ I + [A,B] ⊗ Z]; no input checks.
ComplexMatrix switch_unitary_pauli_form(const ComplexMatrix& a, const ComplexMatrix& b);

/// joint.matrix (psi ⊗ omega).
StateVector apply_switch(const SwitchJoint& joint, const StateVector& psi,
                         const StateVector& omega);

/// Ket the ancilla collapses to for `branch`. The plus branch is read out by
/// the functional cos(θ/2)<0| + i sin(θ/2)<1| and the minus branch by
/// i sin(θ/2)<0| + cos(θ/2)<1|, so these kets are their adjoints.
ComplexVector ancilla_ket(Branch branch, double theta);

/// Contracts the last qubit of `amplitudes` with the readout functional of
/// `branch`. The result is unnormalized; its squared norm is the probability.
ComplexVector project_last_qubit(const ComplexVector& amplitudes, Branch branch, double theta);

/// Measures the last qubit in the θ-dependent readout basis.
std::pair<MeasurementOutcome, MeasurementOutcome> measure_ancilla(const StateVector& state,
                                                                  double theta);

/// S+ = cos(θ/2) ab + i sin(θ/2) ba and S− = i sin(θ/2) ab + cos(θ/2) ba.
/// Neither is unitary in general.
std::pair<ComplexMatrix, ComplexMatrix> branch_gates(const ComplexMatrix& a,
                                                     const ComplexMatrix& b, double theta);

/// branch_gates for a = ⊗ a_i and b = ⊗ b_i, evaluated factor by factor.
std::pair<ComplexMatrix, ComplexMatrix> branch_gates_tensor(std::span<const ComplexMatrix> a_list,
                                                            std::span<const ComplexMatrix> b_list,
                                                            double theta);

/// Four-term commutator/anticommutator form of the two-channel switch.
DensityMatrix switch_channel(const KrausChannel& chan_a, const KrausChannel& chan_b,
                             const DensityMatrix& rho, const DensityMatrix& omega);

/// Unchecked, linear version of switch_channel for arbitrary rho and omega.
ComplexMatrix switch_channel_map(const KrausChannel& chan_a, const KrausChannel& chan_b,
                                 const ComplexMatrix& rho, const ComplexMatrix& omega);

/// Number of orderings of n operations (n!).
std::size_t num_orderings(std::size_t n);

/// All orderings of {0..n-1} in lexicographic order; index k labels control
/// basis state |k>. Ordering p means the product A^(p0) A^(p1) ... A^(pn-1).
std::vector<std::vector<std::size_t>> orderings(std::size_t n);

/// General N-operation switch, sum over Kraus multi-indices of K (rho⊗omega) K†.
/// 1 <= N <= 4 and omega has dimension N!.
DensityMatrix switch_channel_n(std::span<const KrausChannel> channels, const DensityMatrix& rho,
                               const DensityMatrix& omega);

ComplexMatrix switch_channel_n_map(std::span<const KrausChannel> channels,
                                   const ComplexMatrix& rho, const ComplexMatrix& omega);

/// Uniform superposition over the N! control basis states.
DensityMatrix uniform_control_state(std::size_t num_channels);

/// Choi matrix sum_ij |i><j| ⊗ map(|i><j|) of a linear map on dim×dim inputs.
template <typename Map>
ComplexMatrix choi_matrix(Map&& map, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix out;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      const ComplexMatrix image = map(unit);
      if (out.size() == 0) out = ComplexMatrix::Zero(d * image.rows(), d * image.cols());
      out.block(i * image.rows(), j * image.cols(), image.rows(), image.cols()) = image;
    }
  }
  return out;
}

}  // namespace qswitch
