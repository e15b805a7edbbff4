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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qswitch {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Residual bounds shared by every module.
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kIdentityTolerance = 1e-12;

/// Real unit 3-vector used as a rotation axis.
///
/// Construction rejects vectors whose squared norm differs from one by more
/// than 1e-12; use `normalized` to build one from an arbitrary direction.
class BlochVector {
 public:
  /// The z axis.
  BlochVector() = default;
  BlochVector(double x, double y, double z);

  static BlochVector normalized(double x, double y, double z);
  static BlochVector x_axis() { return {1.0, 0.0, 0.0}; }
  static BlochVector y_axis() { return {0.0, 1.0, 0.0}; }
  static BlochVector z_axis() { return {0.0, 0.0, 1.0}; }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  double dot(const BlochVector& other) const {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }

  bool operator==(const BlochVector&) const = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

/// Normalized pure state on `num_qubits` qubits. Qubit 0 is the most
/// significant tensor factor.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  static StateVector basis(std::size_t num_qubits, std::size_t index);
  static StateVector zeros(std::size_t num_qubits) { return basis(num_qubits, 0); }
  static StateVector plus();
  static StateVector minus();

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  std::size_t num_qubits_ = 0;
  ComplexVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix from_state(const StateVector& psi);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }

 private:
  ComplexMatrix entries_;
};

// Constant gates.
ComplexMatrix identity(std::size_t dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix cnot_matrix();
ComplexMatrix cz_matrix();

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors);

/// nx X + ny Y + nz Z.
ComplexMatrix bloch_dot(const BlochVector& n);

/// cos(theta/2) I - i sin(theta/2) (n . sigma).
ComplexMatrix rotation(const BlochVector& n, double theta);

/// cos(theta/2) I⊗I - i sin(theta/2) (n_tilde . sigma) ⊗ (n . sigma).
ComplexMatrix two_qubit_rotation(const BlochVector& n_tilde, const BlochVector& n,
                                 double theta);

double frobenius_norm(const ComplexMatrix& m);

/// ‖M†M − I‖_F.
double unitarity_residual(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTolerance);
double hermiticity_residual(const ComplexMatrix& m);

/// min over real phi of ‖u − e^{i phi} v‖_F.
///
/// The optimal phase is arg tr(v†u), which turns the minimum into the closed
/// form sqrt(‖u‖² + ‖v‖² − 2|tr(u†v)|). The norm is then evaluated directly at
/// that phase so residuals near zero do not lose half their digits to
/// cancellation.
double distance_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v);

/// |<a|b>|^2 for normalized vectors.
double fidelity(const ComplexVector& a, const ComplexVector& b);

/// Rearranges a 4×4 operator so that m[2i+j, 2k+l] lands at [2i+k, 2j+l].
ComplexMatrix realign(const ComplexMatrix& m);

/// Number of singular values of `realign(m)` above tol * (largest one).
int operator_schmidt_rank(const ComplexMatrix& m, double tol = 1e-10);

/// A unit vector perpendicular to n: the normalized projection of z onto the
/// plane orthogonal to n, or the x axis when that projection vanishes.
BlochVector canonical_perp(const BlochVector& n);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue_hermitian(const ComplexMatrix& m);

/// Applies `gate` (dim 2^k) to the listed qubits of an n-qubit amplitude
/// vector in place. qubits[0] is the most significant factor of `gate`.
void apply_gate(ComplexVector& amplitudes, std::size_t num_qubits,
                const ComplexMatrix& gate, std::span<const std::size_t> qubits);

/// Maps an angle onto its representative in (−2π, 2π]; rotation gates are
/// 4π-periodic so this is lossless.
double canonical_angle(double angle);

}  // namespace qswitch
