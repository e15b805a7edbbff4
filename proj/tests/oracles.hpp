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


// Independent reference computations for the tests. Everything here is
// written from loops and a matrix exponential, without calling the library
// routines under test.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;

inline const C kI{0.0, 1.0};

inline M mat2(C a, C b, C c, C d) {
  M m(2, 2);
  m << a, b, c, d;
  return m;
}

inline M I2() { return mat2(1, 0, 0, 1); }
inline M X() { return mat2(0, 1, 1, 0); }
inline M Y() { return mat2(0, -kI, kI, 0); }
inline M Z() { return mat2(1, 0, 0, -1); }
inline M H() { return mat2(1, 1, 1, -1) / std::sqrt(2.0); }

inline M kron(const M& a, const M& b) {
  M out = M::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Taylor series with scaling and squaring.
inline M expm(const M& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
  const M scaled = a / std::pow(2.0, squarings);
  M term = M::Identity(a.rows(), a.cols());
  M sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline M sigma(double nx, double ny, double nz) { return nx * X() + ny * Y() + nz * Z(); }

// exp(-iθ/2 n·σ)
inline M rot(double nx, double ny, double nz, double theta) {
  return expm(-kI * (theta / 2) * sigma(nx, ny, nz));
}

// |0><0| ⊗ I + |1><1| ⊗ e^{iα} exp(iθ n·σ)
inline M cu(double alpha, double theta, double nx, double ny, double nz) {
  M out = M::Zero(4, 4);
  out.block(0, 0, 2, 2) = I2();
  out.block(2, 2, 2, 2) = std::exp(kI * alpha) * expm(kI * theta * sigma(nx, ny, nz));
  return out;
}

// e^{iα} exp(-iθ (cos φ X + sin φ Y)) on the target when the control is set.
inline M barenco(double alpha, double phi, double theta) {
  M out = M::Zero(4, 4);
  out.block(0, 0, 2, 2) = I2();
  out.block(2, 2, 2, 2) =
      std::exp(kI * alpha) * expm(-kI * theta * sigma(std::cos(phi), std::sin(phi), 0.0));
  return out;
}

// Frobenius distance after aligning v to u by the best global phase.
inline double phase_distance(const M& u, const M& v) {
  const C overlap = (v.adjoint() * u).trace();
  const C phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : C(1.0);
  return (u - phase * v).norm();
}

inline double max_abs_diff(const M& a, const M& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Joint switch unitary as an explicit block assembly, control as last factor.
inline M switch_joint(const M& a, const M& b) {
  const int d = static_cast<int>(a.rows());
  const M ab = a * b;
  const M ba = b * a;
  M w = M::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      w(2 * i, 2 * j) = ab(i, j);
      w(2 * i + 1, 2 * j + 1) = ba(i, j);
    }
  return w;
}

// Branch operators obtained by feeding |+> into the joint unitary and
// contracting the control with the readout bras, rescaled by sqrt(2).
//   plus bra:  cos(θ/2)<0| + i sin(θ/2)<1|
//   minus bra: i sin(θ/2)<0| + cos(θ/2)<1|
inline std::pair<M, M> branch_ops(const M& a, const M& b, double theta) {
  const int d = static_cast<int>(a.rows());
  const M w = switch_joint(a, b);
  const C c = std::cos(theta / 2);
  const C s = std::sin(theta / 2);
  M plus = M::Zero(d, d), minus = M::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // input |j> ⊗ |+>
      const C out0 = (w(2 * i, 2 * j) + w(2 * i, 2 * j + 1)) / std::sqrt(2.0);
      const C out1 = (w(2 * i + 1, 2 * j) + w(2 * i + 1, 2 * j + 1)) / std::sqrt(2.0);
      plus(i, j) = std::sqrt(2.0) * (c * out0 + kI * s * out1);
      minus(i, j) = std::sqrt(2.0) * (kI * s * out0 + c * out1);
    }
  return {plus, minus};
}

// Two-channel switch built from the pairwise Kraus operators
//   W_ij = K_i L_j ⊗ |0><0| + L_j K_i ⊗ |1><1|
// summed over ρ ⊗ ω.
inline M switch_channel(const std::vector<M>& ka, const std::vector<M>& kb, const M& rho,
                        const M& omega) {
  const M joint_in = kron(rho, omega);
  M out = M::Zero(joint_in.rows(), joint_in.cols());
  M p0 = M::Zero(2, 2), p1 = M::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  for (const auto& k : ka)
    for (const auto& l : kb) {
      const M w = kron(k * l, p0) + kron(l * k, p1);
      out += w * joint_in * w.adjoint();
    }
  return out;
}

// Operator Schmidt rank of a two-qubit operator: rank of the reshuffled
// matrix R[(i,k),(j,l)] = m[(i,j),(k,l)], counting eigenvalues of R R†
// (squared singular values) above `tol`.
inline int schmidt_rank(const M& m, double tol = 1e-10) {
  M r = M::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = m(2 * i + j, 2 * k + l);
  Eigen::SelfAdjointEigenSolver<M> es(r * r.adjoint());
  int rank = 0;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) > tol) ++rank;
  return rank;
}

inline double fidelity(const V& a, const V& b) { return std::norm(a.dot(b)); }

}  // namespace oracle
