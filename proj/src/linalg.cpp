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

#include "qswitch/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qswitch {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < v) ++n;
  return n;
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z) : x_(x), y_(y), z_(z) {
  const double norm2 = x * x + y * y + z * z;
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("Bloch vector is not unit length (|n|^2 = " +
                                std::to_string(norm2) + ")");
  }
}

BlochVector BlochVector::normalized(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm < 1e-12) {
    throw std::invalid_argument("cannot normalize a zero-length axis");
  }
  return {x / norm, y / norm, z / norm};
}

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const auto dim = static_cast<std::size_t>(amplitudes_.size());
  if (!is_power_of_two(dim)) {
    throw std::invalid_argument("state dimension " + std::to_string(dim) +
                                " is not a power of two");
  }
  num_qubits_ = log2_exact(dim);
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kUnitaryTolerance) {
    throw std::invalid_argument("state is not normalized (norm^2 = " +
                                std::to_string(norm2) + ")");
  }
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(num_qubits) + " qubits");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::plus() {
  ComplexVector v(2);
  v << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
  return StateVector(std::move(v));
}

StateVector StateVector::minus() {
  ComplexVector v(2);
  v << std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  if (hermiticity_residual(entries_) > kUnitaryTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex{1.0}) > kUnitaryTolerance) {
    throw std::invalid_argument("density matrix trace is not one");
  }
  if (min_eigenvalue_hermitian(entries_) < -1e-9) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

ComplexMatrix identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return ComplexMatrix::Identity(d, d);
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix hadamard() {
  const double s = std::numbers::sqrt2 / 2;
  ComplexMatrix m(2, 2);
  m << s, s, s, -s;
  return m;
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

ComplexMatrix cz_matrix() {
  ComplexMatrix m = identity(4);
  m(3, 3) = -1.0;
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) {
    throw std::invalid_argument("tensor_all needs at least one factor");
  }
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

ComplexMatrix bloch_dot(const BlochVector& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

ComplexMatrix rotation(const BlochVector& n, double theta) {
  return std::cos(theta / 2) * identity(2) - kI * std::sin(theta / 2) * bloch_dot(n);
}

ComplexMatrix two_qubit_rotation(const BlochVector& n_tilde, const BlochVector& n,
                                 double theta) {
  return std::cos(theta / 2) * identity(4) -
         kI * std::sin(theta / 2) * tensor(bloch_dot(n_tilde), bloch_dot(n));
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double unitarity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

bool is_unitary(const ComplexMatrix& m, double tol) { return unitarity_residual(m) <= tol; }

double hermiticity_residual(const ComplexMatrix& m) { return (m - m.adjoint()).norm(); }

double distance_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("distance_up_to_phase: dimension mismatch");
  }
  const Complex overlap = (v.adjoint() * u).trace();
  const double magnitude = std::abs(overlap);
  const Complex phase = magnitude > 0.0 ? overlap / magnitude : Complex{1.0};
  return (u - phase * v).norm();
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

ComplexMatrix realign(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("realign expects a 4x4 operator");
  }
  ComplexMatrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = m(2 * i + j, 2 * k + l);
  return out;
}

int operator_schmidt_rank(const ComplexMatrix& m, double tol) {
  const Eigen::JacobiSVD<ComplexMatrix> svd(realign(m));
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * s(0)) ++rank;
  }
  return rank;
}

BlochVector canonical_perp(const BlochVector& n) {
  const double nz = n.z();
  const double px = -nz * n.x();
  const double py = -nz * n.y();
  const double pz = 1.0 - nz * n.z();
  const double norm = std::sqrt(px * px + py * py + pz * pz);
  if (norm > 1e-8) return {px / norm, py / norm, pz / norm};
  return BlochVector::x_axis();
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void apply_gate(ComplexVector& amplitudes, std::size_t num_qubits, const ComplexMatrix& gate,
                std::span<const std::size_t> qubits) {
  const std::size_t k = qubits.size();
  const std::size_t block = std::size_t{1} << k;
  if (static_cast<std::size_t>(gate.rows()) != block ||
      static_cast<std::size_t>(gate.cols()) != block) {
    throw std::invalid_argument("gate dimension does not match operand count");
  }
  if (static_cast<std::size_t>(amplitudes.size()) != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("amplitude vector does not match qubit count");
  }
  std::vector<std::size_t> masks(k);
  std::size_t all = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (qubits[i] >= num_qubits) throw std::out_of_range("gate operand out of range");
    masks[i] = std::size_t{1} << (num_qubits - 1 - qubits[i]);
    if (all & masks[i]) throw std::invalid_argument("repeated gate operand");
    all |= masks[i];
  }

  std::vector<std::size_t> offsets(block);
  for (std::size_t local = 0; local < block; ++local) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (local & (std::size_t{1} << (k - 1 - i))) off |= masks[i];
    }
    offsets[local] = off;
  }

  ComplexVector in(static_cast<Eigen::Index>(block));
  const std::size_t dim = std::size_t{1} << num_qubits;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & all) continue;
    for (std::size_t r = 0; r < block; ++r) {
      in(static_cast<Eigen::Index>(r)) = amplitudes(static_cast<Eigen::Index>(base | offsets[r]));
    }
    const ComplexVector out = gate * in;
    for (std::size_t r = 0; r < block; ++r) {
      amplitudes(static_cast<Eigen::Index>(base | offsets[r])) = out(static_cast<Eigen::Index>(r));
    }
  }
}

double canonical_angle(double angle) {
  constexpr double kTwoPi = 2 * std::numbers::pi;
  double r = std::fmod(angle, 2 * kTwoPi);
  if (r <= -kTwoPi) r += 2 * kTwoPi;
  if (r > kTwoPi) r -= 2 * kTwoPi;
  return r;
}

}  // namespace qswitch
