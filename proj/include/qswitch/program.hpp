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

// Switch programs: circuits lowered so that every controlled gate runs as
//
//   alloc ancilla |+>; apply P; switch(A, B); measure ancilla at θ;
//   if plus apply F+; if minus apply F−; discard ancilla
//
// Each ancilla lives only for its own gate and is appended as the last qubit,
// so a program on n data qubits never holds more than n + 1 qubits.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qswitch/circuit.hpp"
#include "qswitch/linalg.hpp"
#include "qswitch/random.hpp"
#include "qswitch/switch.hpp"

namespace qswitch {

namespace op {

struct AllocAncilla {
  std::size_t ancilla = 0;
  bool operator==(const AllocAncilla&) const = default;
};

struct ApplyLocal {
  std::string matrix;
  std::vector<std::size_t> qubits;
  bool operator==(const ApplyLocal&) const = default;
};

struct SwitchApply {
  std::string gate_a;
  std::string gate_b;
  std::vector<std::size_t> targets;
  std::size_t ancilla = 0;
  bool operator==(const SwitchApply&) const = default;
};

struct MeasureAncilla {
  double theta = 0.0;
  std::size_t ancilla = 0;
  std::string label;
  bool operator==(const MeasureAncilla&) const = default;
};

struct CondApply {
  std::string label;
  Branch outcome = Branch::Plus;
  std::string matrix;
  std::vector<std::size_t> qubits;
  bool operator==(const CondApply&) const = default;
};

struct Discard {
  std::size_t ancilla = 0;
  bool operator==(const Discard&) const = default;
};

}  // namespace op

using ProgramInstruction = std::variant<op::AllocAncilla, op::ApplyLocal, op::SwitchApply,
                                        op::MeasureAncilla, op::CondApply, op::Discard>;

struct SwitchProgram {
  std::size_t num_data_qubits = 0;
  /// Content-addressed: the key is a hash of the serialized entries.
  std::map<std::string, ComplexMatrix> matrices;
  std::vector<ProgramInstruction> instructions;

  /// Inserts `m` and returns its id; identical matrices share one entry.
  std::string intern(const ComplexMatrix& m);
  std::size_t num_measurements() const;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ProgramError when an ancilla is used before allocation or after
/// discard, a label is read before its measurement, a matrix id is missing,
/// or an operand is out of range.
void validate_program(const SwitchProgram& program);

SwitchProgram lower(const Circuit& circuit);

nlohmann::ordered_json program_to_json(const SwitchProgram& program);
/// Throws ProgramError on schema violations, then validates.
SwitchProgram program_from_json(const nlohmann::json& doc);

std::string serialize_program(const SwitchProgram& program);
SwitchProgram deserialize_program(const std::string& text);

struct MeasurementRecord {
  std::string label;
  Branch outcome = Branch::Plus;
  double probability = 0.0;
};

struct SimulationTrace {
  StateVector final_state;
  std::vector<MeasurementRecord> measurement_record;
  std::uint64_t seed = 0;
};

/// Chooses each measurement outcome. Receives the measurement index and the
/// plus-branch probability normalized over the two outcomes.
using BranchChooser = std::function<Branch(std::size_t index, double p_plus)>;

/// Runs the program with outcomes chosen by `choose`. A chosen branch with
/// zero probability throws ProgramError.
SimulationTrace execute_program(const SwitchProgram& program, const StateVector& input,
                                const BranchChooser& choose);

/// Samples every measurement from the exact branch probability with a
/// generator seeded by `seed`.
SimulationTrace simulate_program(const SwitchProgram& program, const StateVector& input,
                                 std::uint64_t seed);

/// Forces the listed outcome for each measurement in program order.
SimulationTrace simulate_program_forced(const SwitchProgram& program, const StateVector& input,
                                        const std::vector<Branch>& outcomes);

struct EquivalenceReport {
  double max_infidelity = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t measurements = 0;
  std::size_t branch_assignments = 0;  // per trial
  bool exhaustive = true;
  double tolerance = kUnitaryTolerance;
  bool passed = false;
};

/// Compares the circuit against the program on `trials` random inputs, with
/// every measurement forced to each branch (exhaustively up to 2^10
/// assignments, sampled beyond that).
EquivalenceReport check_equivalence(const Circuit& circuit, const SwitchProgram& program,
                                    std::size_t trials, std::uint64_t seed,
                                    double tolerance = kUnitaryTolerance);

}  // namespace qswitch
