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

// Textual circuit IR.
//
//   # comment
//   qubits 2
//   h 0
//   cnot 0 1
//   rn 1 theta=0.3 nx=0 ny=1 nz=0
//   cu 0 1 alpha=-1.5708 theta=1.5708 nx=1 ny=0 nz=0
//   barenco 0 1 alpha=1.0 phi=2.0 theta=0.7
//
// Controlled gates take (control, target). Angles are radians. The rn/cu axis
// is normalized on parse; a zero axis is rejected.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/linalg.hpp"
#include "qswitch/synthesis.hpp"

namespace qswitch {

enum class GateKind { X, Y, Z, H, Rx, Ry, Rz, Rn, Cnot, Cz, Cu, Barenco };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);
bool is_controlled(GateKind kind);

struct Instruction {
  GateKind kind = GateKind::X;
  std::vector<std::size_t> qubits;
  // Only the fields relevant to `kind` are meaningful; the rest stay zero.
  double alpha = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  BlochVector axis;

  bool operator==(const Instruction&) const = default;
};

struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<Instruction> instructions;

  bool operator==(const Circuit&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string kind, std::size_t line, std::size_t column, const std::string& detail);

  const std::string& kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Throws ParseError carrying the 1-based line and column of the offending
/// token.
Circuit parse_circuit(std::string_view text);

/// Canonical text form; parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit& circuit);

/// Spec of a controlled instruction (cnot, cz, cu, barenco).
ControlledGateSpec controlled_spec(const Instruction& instr);

/// Unitary of the instruction on its own operands (2×2 or 4×4).
ComplexMatrix gate_matrix(const Instruction& instr);

/// Reference semantics: left-multiplies the gate matrices in order.
StateVector simulate_circuit(const Circuit& circuit, const StateVector& input);

}  // namespace qswitch
