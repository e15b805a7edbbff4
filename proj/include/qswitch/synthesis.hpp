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

// Controlled-gate synthesis from single-qubit gates in superposed orders.
//
// Every two-qubit controlled gate CU = |0><0|⊗I + |1><1|⊗U with
// U = exp[i(α I + θ n·σ)] is realized as
//
//     CU = F± · S±(θ) · P
//
// where P = X⊗(n⊥·σ) prepares the input, S± is the branch gate of the switch
// over A = X⊗(n⊥·σ) and B = R_Z(π/2)⊗R_n(π/2), and F± is a local correction
// chosen by the ancilla readout. Both branches reconstruct CU exactly, so the
// construction is deterministic.

#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "qswitch/linalg.hpp"
#include "qswitch/random.hpp"

namespace qswitch {

/// Parameters (α, θ, n, n⊥) of CU(α, θ, n).
class ControlledGateSpec {
 public:
  /// Uses canonical_perp(axis).
  ControlledGateSpec(double alpha, double theta, BlochVector axis);
  /// Throws unless axis·perp = 0 within 1e-10.
  ControlledGateSpec(double alpha, double theta, BlochVector axis, BlochVector perp);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  const BlochVector& axis() const { return axis_; }
  const BlochVector& perp() const { return perp_; }

 private:
  double alpha_;
  double theta_;
  BlochVector axis_;
  BlochVector perp_;
};

/// Control ⊗ target pair of single-qubit gates.
struct LocalGate {
  ComplexMatrix control;
  ComplexMatrix target;

  ComplexMatrix matrix() const { return tensor(control, target); }
};

/// phase · (control ⊗ target).
struct Correction {
  Complex phase{1.0};
  LocalGate factors;

  ComplexMatrix matrix() const { return phase * factors.matrix(); }
};

struct SynthesisPlan {
  ControlledGateSpec spec;
  LocalGate pre;
  LocalGate gate_a;
  LocalGate gate_b;
  Correction post_plus;
  Correction post_minus;
  double measurement_theta = 0.0;

  /// S+(θ) and S−(θ) of the switch over gate_a and gate_b.
  std::pair<ComplexMatrix, ComplexMatrix> branch_gates() const;
  /// F± · S± · P for the requested branch.
  ComplexMatrix realized(bool plus_branch) const;
};

struct ReferenceDecomposition {
  Complex phase;             // e^{iα/2}
  ComplexMatrix local;       // R_Z(α) ⊗ R_n(−θ)
  ComplexMatrix entangling;  // two_qubit_rotation(z, n, θ)

  ComplexMatrix product() const { return phase * local * entangling; }
};

struct VerificationReport {
  std::string target_name;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double eq59_residual = 0.0;
  /// Probabilities on the trial whose plus-branch probability strays
  /// furthest from one half.
  std::pair<double, double> branch_probabilities{0.0, 0.0};
  double max_probability_deviation = 0.0;
  /// Largest 1 − |<CU ψ|F± φ±>|² over trials and branches.
  double max_infidelity = 0.0;
  double branch_unitarity_residual = 0.0;
  int schmidt_rank_plus = 0;
  int schmidt_rank_minus = 0;
  std::size_t trials = 0;
  double tolerance = kUnitaryTolerance;
  bool passed = false;
};

struct AppendixIdentityResiduals {
  double control_ab = 0.0;  // X R_Z(π/2) X vs R_Z(−π/2)
  double target_ab = 0.0;   // (n⊥·σ) R_n(π/2) (n⊥·σ) vs R_n(−π/2)
  double control_ba = 0.0;  // R_Z(π/2) X X vs R_Z(π/2)
  double target_ba = 0.0;   // R_n(π/2) (n⊥·σ)(n⊥·σ) vs R_n(π/2)

  double max() const;
};

/// The controlled block U = e^{iα}[cos θ I + i sin θ (n·σ)].
ComplexMatrix controlled_block(const ControlledGateSpec& spec);

/// |0><0| ⊗ I + |1><1| ⊗ U.
ComplexMatrix cu_matrix(const ControlledGateSpec& spec);

/// e^{iα/2} (R_Z(α) ⊗ R_n(−θ)) R_{Zn}(θ).
ReferenceDecomposition cu_reference_decomposition(const ControlledGateSpec& spec);

SynthesisPlan synthesize(const ControlledGateSpec& spec);

/// Correction without the α/θ-dependent local part:
/// R_Z(±π/2) ⊗ R_n(±π/2), which maps S±·P onto R_{Zn}(θ).
LocalGate rotation_correction(const ControlledGateSpec& spec, bool plus_branch);

/// Spec for |0><0|⊗I + |1><1|⊗e^{iα_B} R_{n(φ_B)}(2θ_B),
/// with n(φ) = (cos φ, sin φ, 0) and n⊥ = z.
ControlledGateSpec preset_barenco(double alpha_b, double phi_b, double theta_b);

/// Direct matrix of the Barenco gate.
ComplexMatrix barenco_matrix(double alpha_b, double phi_b, double theta_b);

enum class GatePreset { Cnot, Cz };

ControlledGateSpec preset(GatePreset name);
/// "cnot" or "cz"; throws std::invalid_argument otherwise.
ControlledGateSpec preset(std::string_view name);

/// Residuals of the plan against cu_matrix, of the rotation-only correction
/// against R_{Zn}(θ), and of the full state pipeline (prepare, switch, read
/// out, correct) on `trials` random inputs drawn from `rng`.
VerificationReport verify_synthesis(const ControlledGateSpec& spec, Rng& rng,
                                    std::size_t trials = 100, std::string target_name = "cu",
                                    double tolerance = kUnitaryTolerance);

AppendixIdentityResiduals appendix_b_identities(const BlochVector& n);
AppendixIdentityResiduals appendix_b_identities(const BlochVector& n, const BlochVector& perp);

}  // namespace qswitch
