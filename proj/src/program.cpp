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

#include "qswitch/program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "qswitch/synthesis.hpp"

namespace qswitch {

namespace {

constexpr std::size_t kMaxExhaustiveMeasurements = 10;
constexpr std::size_t kSampledAssignments = std::size_t{1} << kMaxExhaustiveMeasurements;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// FNV-1a over the 17-significant-digit rendering of every entry.
std::string content_id(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const char* s) {
    for (; *s; ++s) {
      h ^= static_cast<unsigned char>(*s);
      h *= 1099511628211ULL;
    }
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%ldx%ld;", static_cast<long>(m.rows()),
                static_cast<long>(m.cols()));
  mix(buf);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g;", m(i, j).real() + 0.0, m(i, j).imag() + 0.0);
      mix(buf);
    }
  }
  std::snprintf(buf, sizeof buf, "u%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t dim_for(std::size_t num_qubits) { return std::size_t{1} << num_qubits; }

std::vector<std::size_t> with_ancilla(std::vector<std::size_t> qubits, std::size_t ancilla) {
  qubits.push_back(ancilla);
  return qubits;
}

ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

std::string SwitchProgram::intern(const ComplexMatrix& m) {
  std::string id = content_id(m);
  for (int suffix = 1;; ++suffix) {
    const auto it = matrices.find(id);
    if (it == matrices.end()) {
      matrices.emplace(id, m);
      return id;
    }
    if (it->second == m) return id;
    id = content_id(m) + "-" + std::to_string(suffix);
  }
}

std::size_t SwitchProgram::num_measurements() const {
  return static_cast<std::size_t>(
      std::count_if(instructions.begin(), instructions.end(), [](const ProgramInstruction& i) {
        return std::holds_alternative<op::MeasureAncilla>(i);
      }));
}

void validate_program(const SwitchProgram& program) {
  if (program.num_data_qubits == 0) throw ProgramError("program needs at least one data qubit");

  enum class AncillaState { Live, Measured };
  std::vector<AncillaState> ancillae;  // index = qubit - num_data_qubits
  std::set<std::string> labels;
  std::size_t step = 0;

  auto where = [&step] { return " (instruction " + std::to_string(step) + ")"; };
  auto live = [&] { return program.num_data_qubits + ancillae.size(); };
  auto check_matrix = [&](const std::string& id, std::size_t operands) {
    const auto it = program.matrices.find(id);
    if (it == program.matrices.end()) throw ProgramError("unknown matrix '" + id + "'" + where());
    const auto d = static_cast<Eigen::Index>(dim_for(operands));
    if (it->second.rows() != d || it->second.cols() != d) {
      throw ProgramError("matrix '" + id + "' does not match operand count" + where());
    }
  };
  auto check_operands = [&](const std::vector<std::size_t>& qubits) {
    std::set<std::size_t> seen;
    for (const auto q : qubits) {
      if (q >= live()) throw ProgramError("operand " + std::to_string(q) + " out of range" + where());
      if (!seen.insert(q).second) throw ProgramError("repeated operand" + where());
    }
    if (qubits.empty()) throw ProgramError("instruction has no operands" + where());
  };
  auto check_last_ancilla = [&](std::size_t ancilla, AncillaState expected, const char* what) {
    if (ancillae.empty() || ancilla + 1 != live()) {
      throw ProgramError(std::string(what) + ": ancilla " + std::to_string(ancilla) +
                         " is not the most recent live ancilla" + where());
    }
    if (ancillae.back() != expected) {
      throw ProgramError(std::string(what) + ": ancilla " + std::to_string(ancilla) +
                         (expected == AncillaState::Live ? " was already measured"
                                                         : " has not been measured") +
                         where());
    }
  };

  for (const auto& instr : program.instructions) {
    std::visit(overloaded{
                   [&](const op::AllocAncilla& a) {
                     if (a.ancilla != live()) {
                       throw ProgramError("ancilla must be allocated as qubit " +
                                          std::to_string(live()) + where());
                     }
                     ancillae.push_back(AncillaState::Live);
                   },
                   [&](const op::ApplyLocal& a) {
                     check_operands(a.qubits);
                     check_matrix(a.matrix, a.qubits.size());
                   },
                   [&](const op::SwitchApply& s) {
                     check_operands(with_ancilla(s.targets, s.ancilla));
                     if (s.ancilla < program.num_data_qubits) {
                       throw ProgramError("switch control is not an ancilla" + where());
                     }
                     if (ancillae[s.ancilla - program.num_data_qubits] != AncillaState::Live) {
                       throw ProgramError("switch control was already measured" + where());
                     }
                     check_matrix(s.gate_a, s.targets.size());
                     check_matrix(s.gate_b, s.targets.size());
                     if (!is_unitary(program.matrices.at(s.gate_a)) ||
                         !is_unitary(program.matrices.at(s.gate_b))) {
                       throw ProgramError("switched gates must be unitary" + where());
                     }
                   },
                   [&](const op::MeasureAncilla& m) {
                     check_last_ancilla(m.ancilla, AncillaState::Live, "measure");
                     if (!std::isfinite(m.theta)) throw ProgramError("non-finite angle" + where());
                     if (!labels.insert(m.label).second) {
                       throw ProgramError("duplicate label '" + m.label + "'" + where());
                     }
                     ancillae.back() = AncillaState::Measured;
                   },
                   [&](const op::CondApply& c) {
                     if (!labels.contains(c.label)) {
                       throw ProgramError("label '" + c.label + "' used before its measurement" +
                                          where());
                     }
                     check_operands(c.qubits);
                     check_matrix(c.matrix, c.qubits.size());
                   },
                   [&](const op::Discard& d) {
                     check_last_ancilla(d.ancilla, AncillaState::Measured, "discard");
                     ancillae.pop_back();
                   },
               },
               instr);
    ++step;
  }
  if (!ancillae.empty()) throw ProgramError("ancilla never discarded");
}

SwitchProgram lower(const Circuit& circuit) {
  SwitchProgram program;
  program.num_data_qubits = circuit.num_qubits;
  std::size_t measurement = 0;
  const std::size_t ancilla = circuit.num_qubits;

  for (const auto& instr : circuit.instructions) {
    if (!is_controlled(instr.kind)) {
      program.instructions.emplace_back(op::ApplyLocal{program.intern(gate_matrix(instr)), instr.qubits});
      continue;
    }
    const SynthesisPlan plan = synthesize(controlled_spec(instr));
    const std::string label = "m" + std::to_string(measurement++);
    const std::vector<std::size_t>& pair = instr.qubits;

    program.instructions.emplace_back(op::AllocAncilla{ancilla});
    program.instructions.emplace_back(op::ApplyLocal{program.intern(plan.pre.matrix()), pair});
    program.instructions.emplace_back(op::SwitchApply{program.intern(plan.gate_a.matrix()),
                                                      program.intern(plan.gate_b.matrix()), pair,
                                                      ancilla});
    program.instructions.emplace_back(
        op::MeasureAncilla{canonical_angle(plan.measurement_theta), ancilla, label});
    program.instructions.emplace_back(
        op::CondApply{label, Branch::Plus, program.intern(plan.post_plus.matrix()), pair});
    program.instructions.emplace_back(
        op::CondApply{label, Branch::Minus, program.intern(plan.post_minus.matrix()), pair});
    program.instructions.emplace_back(op::Discard{ancilla});
  }
  return program;
}

nlohmann::ordered_json program_to_json(const SwitchProgram& program) {
  nlohmann::ordered_json doc;
  doc["num_data_qubits"] = program.num_data_qubits;
  nlohmann::ordered_json matrices = nlohmann::ordered_json::object();
  for (const auto& [id, m] : program.matrices) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        entries.push_back({m(i, j).real() + 0.0, m(i, j).imag() + 0.0});
      }
    }
    matrices[id] = std::move(entries);
  }
  doc["matrices"] = std::move(matrices);

  nlohmann::ordered_json instructions = nlohmann::ordered_json::array();
  for (const auto& instr : program.instructions) {
    nlohmann::ordered_json rec;
    std::visit(overloaded{
                   [&](const op::AllocAncilla& a) {
                     rec["op"] = "alloc_ancilla";
                     rec["ancilla"] = a.ancilla;
                     rec["state"] = "plus";
                   },
                   [&](const op::ApplyLocal& a) {
                     rec["op"] = "apply_local";
                     rec["matrix"] = a.matrix;
                     rec["qubits"] = a.qubits;
                   },
                   [&](const op::SwitchApply& s) {
                     rec["op"] = "switch_apply";
                     rec["gate_a"] = s.gate_a;
                     rec["gate_b"] = s.gate_b;
                     rec["targets"] = s.targets;
                     rec["ancilla"] = s.ancilla;
                   },
                   [&](const op::MeasureAncilla& m) {
                     rec["op"] = "measure_ancilla";
                     rec["theta"] = m.theta;
                     rec["ancilla"] = m.ancilla;
                     rec["label"] = m.label;
                   },
                   [&](const op::CondApply& c) {
                     rec["op"] = "cond_apply";
                     rec["label"] = c.label;
                     rec["outcome"] = to_string(c.outcome);
                     rec["matrix"] = c.matrix;
                     rec["qubits"] = c.qubits;
                   },
                   [&](const op::Discard& d) {
                     rec["op"] = "discard";
                     rec["ancilla"] = d.ancilla;
                   },
               },
               instr);
    instructions.push_back(std::move(rec));
  }
  doc["instructions"] = std::move(instructions);
  return doc;
}

SwitchProgram program_from_json(const nlohmann::json& doc) {
  SwitchProgram program;
  try {
    program.num_data_qubits = doc.at("num_data_qubits").get<std::size_t>();
    for (const auto& [id, entries] : doc.at("matrices").items()) {
      const auto n = entries.size();
      const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
      if (d == 0 || static_cast<std::size_t>(d * d) != n) {
        throw ProgramError("matrix '" + id + "' is not square");
      }
      ComplexMatrix m(d, d);
      for (Eigen::Index k = 0; k < d * d; ++k) {
        const auto& pair = entries.at(static_cast<std::size_t>(k));
        if (pair.size() != 2) throw ProgramError("matrix entry must be [re, im]");
        m(k / d, k % d) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
      }
      program.matrices.emplace(id, std::move(m));
    }
    for (const auto& rec : doc.at("instructions")) {
      const auto kind = rec.at("op").get<std::string>();
      if (kind == "alloc_ancilla") {
        if (rec.contains("state") && rec.at("state").get<std::string>() != "plus") {
          throw ProgramError("ancillae can only be allocated in |+>");
        }
        program.instructions.emplace_back(op::AllocAncilla{rec.at("ancilla").get<std::size_t>()});
      } else if (kind == "apply_local") {
        program.instructions.emplace_back(
            op::ApplyLocal{rec.at("matrix").get<std::string>(),
                           rec.at("qubits").get<std::vector<std::size_t>>()});
      } else if (kind == "switch_apply") {
        program.instructions.emplace_back(op::SwitchApply{
            rec.at("gate_a").get<std::string>(), rec.at("gate_b").get<std::string>(),
            rec.at("targets").get<std::vector<std::size_t>>(), rec.at("ancilla").get<std::size_t>()});
      } else if (kind == "measure_ancilla") {
        program.instructions.emplace_back(op::MeasureAncilla{rec.at("theta").get<double>(),
                                                             rec.at("ancilla").get<std::size_t>(),
                                                             rec.at("label").get<std::string>()});
      } else if (kind == "cond_apply") {
        const auto outcome = rec.at("outcome").get<std::string>();
        if (outcome != "plus" && outcome != "minus") {
          throw ProgramError("unknown outcome '" + outcome + "'");
        }
        program.instructions.emplace_back(
            op::CondApply{rec.at("label").get<std::string>(),
                          outcome == "plus" ? Branch::Plus : Branch::Minus,
                          rec.at("matrix").get<std::string>(),
                          rec.at("qubits").get<std::vector<std::size_t>>()});
      } else if (kind == "discard") {
        program.instructions.emplace_back(op::Discard{rec.at("ancilla").get<std::size_t>()});
      } else {
        throw ProgramError("unknown instruction '" + kind + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProgramError(std::string("malformed program document: ") + e.what());
  }
  validate_program(program);
  return program;
}

std::string serialize_program(const SwitchProgram& program) {
  return program_to_json(program).dump(2) + "\n";
}

SwitchProgram deserialize_program(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProgramError(std::string("program is not valid JSON: ") + e.what());
  }
  return program_from_json(doc);
}

SimulationTrace execute_program(const SwitchProgram& program, const StateVector& input,
                                const BranchChooser& choose) {
  validate_program(program);
  if (input.num_qubits() != program.num_data_qubits) {
    throw std::invalid_argument("simulate_program: input has " +
                                std::to_string(input.num_qubits()) + " qubits, program expects " +
                                std::to_string(program.num_data_qubits));
  }

  ComplexVector state = input.amplitudes();
  std::size_t live = program.num_data_qubits;
  // Ket each measured ancilla collapsed to, by qubit index.
  std::map<std::size_t, ComplexVector> collapsed;
  std::map<std::string, Branch> outcomes;
  std::vector<MeasurementRecord> record;
  const ComplexVector plus = StateVector::plus().amplitudes();

  for (const auto& instr : program.instructions) {
    std::visit(
        overloaded{
            [&](const op::AllocAncilla&) {
              state = kron_vec(state, plus);
              ++live;
            },
            [&](const op::ApplyLocal& a) {
              apply_gate(state, live, program.matrices.at(a.matrix), a.qubits);
            },
            [&](const op::SwitchApply& s) {
              const SwitchJoint joint =
                  switch_unitary(program.matrices.at(s.gate_a), program.matrices.at(s.gate_b));
              apply_gate(state, live, joint.matrix, with_ancilla(s.targets, s.ancilla));
            },
            [&](const op::MeasureAncilla& m) {
              const ComplexVector proj_plus = project_last_qubit(state, Branch::Plus, m.theta);
              const ComplexVector proj_minus = project_last_qubit(state, Branch::Minus, m.theta);
              double p_plus = proj_plus.squaredNorm();
              double p_minus = proj_minus.squaredNorm();
              if (p_plus <= kZeroProbability) p_plus = 0.0;
              if (p_minus <= kZeroProbability) p_minus = 0.0;
              const Branch branch = choose(record.size(), p_plus / (p_plus + p_minus));
              const ComplexVector& chosen = branch == Branch::Plus ? proj_plus : proj_minus;
              const double p = branch == Branch::Plus ? p_plus : p_minus;
              if (!(p > 0.0)) {
                throw ProgramError("measurement '" + m.label + "' forced onto a zero-probability branch");
              }
              const ComplexVector ket = ancilla_ket(branch, m.theta);
              state = kron_vec(chosen / std::sqrt(p), ket);
              collapsed[m.ancilla] = ket;
              outcomes[m.label] = branch;
              record.push_back({m.label, branch, std::clamp(p, 0.0, 1.0)});
            },
            [&](const op::CondApply& c) {
              if (outcomes.at(c.label) == c.outcome) {
                apply_gate(state, live, program.matrices.at(c.matrix), c.qubits);
              }
            },
            [&](const op::Discard& d) {
              const ComplexVector& ket = collapsed.at(d.ancilla);
              const Eigen::Index half = state.size() / 2;
              ComplexVector reduced(half);
              for (Eigen::Index i = 0; i < half; ++i) {
                reduced(i) = std::conj(ket(0)) * state(2 * i) + std::conj(ket(1)) * state(2 * i + 1);
              }
              state = std::move(reduced);
              collapsed.erase(d.ancilla);
              --live;
            },
        },
        instr);
  }

  state.normalize();
  return SimulationTrace{StateVector(std::move(state)), std::move(record), 0};
}

SimulationTrace simulate_program(const SwitchProgram& program, const StateVector& input,
                                 std::uint64_t seed) {
  Rng rng = make_rng(seed);
  SimulationTrace trace = execute_program(program, input, [&rng](std::size_t, double p_plus) {
    return uniform_real(rng, 0.0, 1.0) < p_plus ? Branch::Plus : Branch::Minus;
  });
  trace.seed = seed;
  return trace;
}

SimulationTrace simulate_program_forced(const SwitchProgram& program, const StateVector& input,
                                        const std::vector<Branch>& outcomes) {
  return execute_program(program, input, [&outcomes](std::size_t index, double) {
    if (index >= outcomes.size()) throw ProgramError("not enough forced outcomes");
    return outcomes[index];
  });
}

EquivalenceReport check_equivalence(const Circuit& circuit, const SwitchProgram& program,
                                    std::size_t trials, std::uint64_t seed, double tolerance) {
  if (circuit.num_qubits != program.num_data_qubits) {
    throw std::invalid_argument("check_equivalence: circuit and program qubit counts differ");
  }
  EquivalenceReport report;
  report.trials = trials;
  report.seed = seed;
  report.tolerance = tolerance;
  report.measurements = program.num_measurements();
  report.exhaustive = report.measurements <= kMaxExhaustiveMeasurements;
  report.branch_assignments =
      report.exhaustive ? (std::size_t{1} << report.measurements) : kSampledAssignments;

  Rng input_rng = make_rng(seed, 0);
  Rng branch_rng = make_rng(seed, 1);
  const std::size_t k = report.measurements;

  for (std::size_t t = 0; t < trials; ++t) {
    const StateVector psi = random_state(circuit.num_qubits, input_rng);
    const ComplexVector reference = simulate_circuit(circuit, psi).amplitudes();
    for (std::size_t a = 0; a < report.branch_assignments; ++a) {
      std::vector<Branch> outcomes(k, Branch::Plus);
      if (report.exhaustive) {
        for (std::size_t j = 0; j < k; ++j) {
          if ((a >> j) & 1U) outcomes[j] = Branch::Minus;
        }
      } else if (a == 1) {
        std::fill(outcomes.begin(), outcomes.end(), Branch::Minus);
      } else if (a > 1) {
        for (auto& o : outcomes) {
          o = uniform_real(branch_rng, 0.0, 1.0) < 0.5 ? Branch::Plus : Branch::Minus;
        }
      }
      const SimulationTrace trace = simulate_program_forced(program, psi, outcomes);
      report.max_infidelity = std::max(
          report.max_infidelity, 1.0 - fidelity(reference, trace.final_state.amplitudes()));
    }
  }
  report.passed = report.max_infidelity <= tolerance;
  return report;
}

}  // namespace qswitch
