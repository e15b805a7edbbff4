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

#include "qswitch/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <utility>

namespace qswitch {

namespace {

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
  std::vector<std::string_view> params;
};

const std::vector<GateInfo>& gate_table() {
  static const std::vector<GateInfo> table = {
      {GateKind::X, "x", 1, {}},
      {GateKind::Y, "y", 1, {}},
      {GateKind::Z, "z", 1, {}},
      {GateKind::H, "h", 1, {}},
      {GateKind::Rx, "rx", 1, {"theta"}},
      {GateKind::Ry, "ry", 1, {"theta"}},
      {GateKind::Rz, "rz", 1, {"theta"}},
      {GateKind::Rn, "rn", 1, {"theta", "nx", "ny", "nz"}},
      {GateKind::Cnot, "cnot", 2, {}},
      {GateKind::Cz, "cz", 2, {}},
      {GateKind::Cu, "cu", 2, {"alpha", "theta", "nx", "ny", "nz"}},
      {GateKind::Barenco, "barenco", 2, {"alpha", "phi", "theta"}},
  };
  return table;
}

const GateInfo& info(GateKind kind) {
  for (const auto& g : gate_table()) {
    if (g.kind == kind) return g;
  }
  throw std::logic_error("gate kind missing from table");
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<double> parse_float(std::string_view s) {
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
    if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
  }
  if (s.empty()) return std::nullopt;
  // from_chars also accepts "inf"/"nan"; only plain decimal text is allowed.
  const bool plain = std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '-' || c == '+';
  });
  if (!plain) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v + 0.0);
  return std::string(buf.data(), ptr);
}

BlochVector axis_from_components(double x, double y, double z) {
  const double norm2 = x * x + y * y + z * z;
  if (std::abs(norm2 - 1.0) <= 1e-12) return BlochVector(x, y, z);
  return BlochVector::normalized(x, y, z);
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& g : gate_table()) {
    if (g.name == name) return g.kind;
  }
  return std::nullopt;
}

bool is_controlled(GateKind kind) { return info(kind).arity == 2; }

ParseError::ParseError(std::string kind, std::size_t line, std::size_t column,
                       const std::string& detail)
    : std::runtime_error(kind + ", line " + std::to_string(line) + ", column " +
                         std::to_string(column) + (detail.empty() ? "" : ": " + detail)),
      kind_(std::move(kind)),
      line_(line),
      column_(column) {}

Circuit parse_circuit(std::string_view text) {
  Circuit circuit;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;

    const Token& head = tokens.front();
    if (head.text == "qubits") {
      if (have_header) throw ParseError("duplicate header", line_no, head.column, "");
      if (tokens.size() != 2) {
        throw ParseError("arity mismatch", line_no, head.column,
                         "header takes exactly one qubit count");
      }
      const auto n = parse_index(tokens[1].text);
      if (!n) {
        throw ParseError("malformed number", line_no, tokens[1].column,
                         "'" + std::string(tokens[1].text) + "'");
      }
      if (*n == 0) throw ParseError("invalid qubit count", line_no, tokens[1].column, "0");
      circuit.num_qubits = *n;
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw ParseError("missing header", line_no, head.column,
                       "expected 'qubits N' before the first gate");
    }

    const auto kind = gate_from_name(head.text);
    if (!kind) {
      throw ParseError("unknown gate", line_no, head.column, "'" + std::string(head.text) + "'");
    }
    const GateInfo& gate = info(*kind);

    Instruction instr;
    instr.kind = *kind;
    std::map<std::string_view, double> params;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const Token& tok = tokens[t];
      const auto eq = tok.text.find('=');
      if (eq == std::string_view::npos) {
        if (!params.empty()) {
          throw ParseError("unexpected token", line_no, tok.column,
                           "operand after parameters");
        }
        const auto q = parse_index(tok.text);
        if (!q) {
          throw ParseError("malformed number", line_no, tok.column,
                           "'" + std::string(tok.text) + "' is not a qubit index");
        }
        if (*q >= circuit.num_qubits) {
          throw ParseError("qubit out of range", line_no, tok.column,
                           std::to_string(*q) + " >= " + std::to_string(circuit.num_qubits));
        }
        if (std::find(instr.qubits.begin(), instr.qubits.end(), *q) != instr.qubits.end()) {
          throw ParseError("repeated operand", line_no, tok.column,
                           "control and target must differ");
        }
        instr.qubits.push_back(*q);
        continue;
      }
      const std::string_view key = tok.text.substr(0, eq);
      const std::string_view raw = tok.text.substr(eq + 1);
      if (std::find(gate.params.begin(), gate.params.end(), key) == gate.params.end()) {
        throw ParseError("unknown parameter", line_no, tok.column,
                         "'" + std::string(key) + "' for " + std::string(gate.name));
      }
      if (params.contains(key)) {
        throw ParseError("duplicate parameter", line_no, tok.column, std::string(key));
      }
      const auto value = parse_float(raw);
      if (!value) {
        throw ParseError("malformed number", line_no, tok.column + eq + 1,
                         "'" + std::string(raw) + "'");
      }
      params[key] = *value;
    }
    if (instr.qubits.size() != gate.arity) {
      throw ParseError("arity mismatch", line_no, head.column,
                       std::string(gate.name) + " takes " + std::to_string(gate.arity) +
                           " operand(s), got " + std::to_string(instr.qubits.size()));
    }
    for (const auto& p : gate.params) {
      if (!params.contains(p)) {
        throw ParseError("missing parameter", line_no, head.column, std::string(p));
      }
    }
    auto get = [&](std::string_view key) {
      const auto it = params.find(key);
      return it == params.end() ? 0.0 : it->second;
    };
    instr.alpha = get("alpha");
    instr.theta = get("theta");
    instr.phi = get("phi");
    if (params.contains("nx")) {
      try {
        instr.axis = axis_from_components(get("nx"), get("ny"), get("nz"));
      } catch (const std::invalid_argument&) {
        throw ParseError("invalid axis", line_no, head.column, "axis must be non-zero");
      }
    }
    circuit.instructions.push_back(std::move(instr));
  }

  if (!have_header) throw ParseError("missing header", 1, 1, "expected 'qubits N'");
  return circuit;
}

std::string print_circuit(const Circuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.num_qubits) + "\n";
  for (const auto& instr : circuit.instructions) {
    const GateInfo& gate = info(instr.kind);
    out += gate.name;
    for (const auto q : instr.qubits) out += " " + std::to_string(q);
    for (const auto& p : gate.params) {
      double v = 0.0;
      if (p == "alpha") v = instr.alpha;
      if (p == "theta") v = instr.theta;
      if (p == "phi") v = instr.phi;
      if (p == "nx") v = instr.axis.x();
      if (p == "ny") v = instr.axis.y();
      if (p == "nz") v = instr.axis.z();
      out += " " + std::string(p) + "=" + format_double(v);
    }
    out += "\n";
  }
  return out;
}

ControlledGateSpec controlled_spec(const Instruction& instr) {
  switch (instr.kind) {
    case GateKind::Cnot:
      return preset(GatePreset::Cnot);
    case GateKind::Cz:
      return preset(GatePreset::Cz);
    case GateKind::Cu:
      return ControlledGateSpec(instr.alpha, instr.theta, instr.axis);
    case GateKind::Barenco:
      return preset_barenco(instr.alpha, instr.phi, instr.theta);
    default:
      throw std::invalid_argument("instruction '" + std::string(gate_name(instr.kind)) +
                                  "' is not a controlled gate");
  }
}

ComplexMatrix gate_matrix(const Instruction& instr) {
  switch (instr.kind) {
    case GateKind::X:
      return pauli_x();
    case GateKind::Y:
      return pauli_y();
    case GateKind::Z:
      return pauli_z();
    case GateKind::H:
      return hadamard();
    case GateKind::Rx:
      return rotation(BlochVector::x_axis(), instr.theta);
    case GateKind::Ry:
      return rotation(BlochVector::y_axis(), instr.theta);
    case GateKind::Rz:
      return rotation(BlochVector::z_axis(), instr.theta);
    case GateKind::Rn:
      return rotation(instr.axis, instr.theta);
    case GateKind::Cnot:
      return cnot_matrix();
    case GateKind::Cz:
      return cz_matrix();
    case GateKind::Cu:
      return cu_matrix(controlled_spec(instr));
    case GateKind::Barenco:
      return barenco_matrix(instr.alpha, instr.phi, instr.theta);
  }
  throw std::logic_error("unhandled gate kind");
}

StateVector simulate_circuit(const Circuit& circuit, const StateVector& input) {
  if (input.num_qubits() != circuit.num_qubits) {
    throw std::invalid_argument("simulate_circuit: input has " +
                                std::to_string(input.num_qubits()) + " qubits, circuit has " +
                                std::to_string(circuit.num_qubits));
  }
  ComplexVector state = input.amplitudes();
  for (const auto& instr : circuit.instructions) {
    apply_gate(state, circuit.num_qubits, gate_matrix(instr), instr.qubits);
  }
  state.normalize();
  return StateVector(std::move(state));
}

}  // namespace qswitch
