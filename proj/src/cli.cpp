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

#include "qswitch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qswitch/circuit.hpp"
#include "qswitch/program.hpp"
#include "qswitch/suites.hpp"
#include "qswitch/synthesis.hpp"

namespace qswitch::cli {

namespace {

using Json = nlohmann::ordered_json;

// A failure that maps onto an exit code, with the message for stderr.
struct ExitError {
  int code;
  std::string message;
};

struct CliConfig {
  std::string input_path;
  std::string output_path;
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  double tolerance = 1e-10;
  std::string format = "json";
};

void add_common(CLI::App& sub, CliConfig& config) {
  sub.add_option("--seed", config.seed, "Seed for every random stream")->capture_default_str();
  sub.add_option("--trials", config.trials, "Random trials")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  sub.add_option("--tolerance", config.tolerance, "Pass threshold for residuals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub.add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  sub.add_option("-o,--output", config.output_path, "Write the document here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitError{kExitUsage, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const CliConfig& config, const std::string& document, std::ostream& out) {
  if (config.output_path.empty()) {
    out << document;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ExitError{kExitUsage, "cannot write '" + config.output_path + "'"};
  file << document;
  if (!file) throw ExitError{kExitUsage, "write to '" + config.output_path + "' failed"};
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real() + 0.0, m(i, j).imag() + 0.0});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real() + 0.0, v(i).imag() + 0.0});
  return out;
}

Json axis_json(const BlochVector& n) { return Json::array({n.x(), n.y(), n.z()}); }

Json local_json(const LocalGate& g) {
  return Json{{"control", matrix_json(g.control)},
              {"target", matrix_json(g.target)},
              {"matrix", matrix_json(g.matrix())}};
}

Json correction_json(const Correction& c) {
  Json j{{"phase", {c.phase.real() + 0.0, c.phase.imag() + 0.0}}};
  j["control"] = matrix_json(c.factors.control);
  j["target"] = matrix_json(c.factors.target);
  j["matrix"] = matrix_json(c.matrix());
  return j;
}

std::string format_matrix_text(const ComplexMatrix& m, const std::string& indent) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(6);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ss << indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real() + 0.0;
      const double im = m(i, j).imag() + 0.0;
      ss << std::setw(10) << re << (im < 0 ? " - " : " + ") << std::setw(8) << std::abs(im) << "i";
      ss << (j + 1 < m.cols() ? "  " : "\n");
    }
  }
  return ss.str();
}

std::string sci(double v) {
  std::ostringstream ss;
  ss << std::scientific << std::setprecision(3) << v;
  return ss.str();
}

// ---------------------------------------------------------------- synth ----

struct SynthFlags {
  std::string gate;
  std::optional<double> alpha, theta, phi, nx, ny, nz;
};

ControlledGateSpec spec_from_flags(const SynthFlags& f) {
  auto require = [&](const std::optional<double>& v, const char* name) {
    if (!v) throw ExitError{kExitUsage, "--gate " + f.gate + " requires --" + name};
    return *v;
  };
  auto forbid = [&](const std::optional<double>& v, const char* name) {
    if (v) throw ExitError{kExitUsage, "--" + std::string(name) + " is not valid for --gate " + f.gate};
  };
  if (f.gate == "cnot" || f.gate == "cz") {
    forbid(f.alpha, "alpha");
    forbid(f.theta, "theta");
    forbid(f.phi, "phi");
    forbid(f.nx, "nx");
    forbid(f.ny, "ny");
    forbid(f.nz, "nz");
    return preset(f.gate);
  }
  if (f.gate == "barenco") {
    forbid(f.nx, "nx");
    forbid(f.ny, "ny");
    forbid(f.nz, "nz");
    return preset_barenco(require(f.alpha, "alpha"), require(f.phi, "phi"),
                          require(f.theta, "theta"));
  }
  forbid(f.phi, "phi");
  const double alpha = require(f.alpha, "alpha");
  const double theta = require(f.theta, "theta");
  const double x = require(f.nx, "nx");
  const double y = require(f.ny, "ny");
  const double z = require(f.nz, "nz");
  try {
    const double norm2 = x * x + y * y + z * z;
    const BlochVector axis = std::abs(norm2 - 1.0) <= 1e-12 ? BlochVector(x, y, z)
                                                            : BlochVector::normalized(x, y, z);
    return ControlledGateSpec(alpha, theta, axis);
  } catch (const std::invalid_argument& e) {
    throw ExitError{kExitUsage, e.what()};
  }
}

int cmd_synth(const SynthFlags& flags, const CliConfig& config, std::ostream& out) {
  const ControlledGateSpec spec = spec_from_flags(flags);
  const SynthesisPlan plan = synthesize(spec);
  Rng rng = make_rng(config.seed);
  const VerificationReport report =
      verify_synthesis(spec, rng, config.trials, flags.gate, config.tolerance);

  std::string doc;
  if (config.format == "json") {
    Json j;
    j["target"] = report.target_name;
    j["spec"] = Json{{"alpha", spec.alpha()},
                     {"theta", spec.theta()},
                     {"axis", axis_json(spec.axis())},
                     {"perp", axis_json(spec.perp())}};
    j["target_matrix"] = matrix_json(cu_matrix(spec));
    j["plan"] = Json{{"pre", local_json(plan.pre)},
                     {"gate_a", local_json(plan.gate_a)},
                     {"gate_b", local_json(plan.gate_b)},
                     {"post_plus", correction_json(plan.post_plus)},
                     {"post_minus", correction_json(plan.post_minus)},
                     {"measurement_theta", canonical_angle(plan.measurement_theta)}};
    j["residual_plus"] = report.residual_plus;
    j["residual_minus"] = report.residual_minus;
    j["eq59_residual"] = report.eq59_residual;
    j["branch_probabilities"] = {report.branch_probabilities.first,
                                 report.branch_probabilities.second};
    j["max_infidelity"] = report.max_infidelity;
    j["branch_unitarity_residual"] = report.branch_unitarity_residual;
    j["schmidt_rank"] = {report.schmidt_rank_plus, report.schmidt_rank_minus};
    j["trials"] = report.trials;
    j["seed"] = config.seed;
    j["tolerance"] = config.tolerance;
    j["passed"] = report.passed;
    doc = j.dump(2) + "\n";
  } else {
    std::ostringstream ss;
    ss << "target: " << report.target_name << "\n";
    ss << "spec: alpha=" << spec.alpha() << " theta=" << spec.theta() << " n=(" << spec.axis().x()
       << ", " << spec.axis().y() << ", " << spec.axis().z() << ") n_perp=(" << spec.perp().x()
       << ", " << spec.perp().y() << ", " << spec.perp().z() << ")\n";
    ss << "measurement theta: " << canonical_angle(plan.measurement_theta) << "\n";
    ss << "P =\n" << format_matrix_text(plan.pre.matrix(), "  ");
    ss << "A =\n" << format_matrix_text(plan.gate_a.matrix(), "  ");
    ss << "B =\n" << format_matrix_text(plan.gate_b.matrix(), "  ");
    ss << "F+ =\n" << format_matrix_text(plan.post_plus.matrix(), "  ");
    ss << "F- =\n" << format_matrix_text(plan.post_minus.matrix(), "  ");
    ss << "residual_plus: " << sci(report.residual_plus) << "\n";
    ss << "residual_minus: " << sci(report.residual_minus) << "\n";
    ss << "eq59_residual: " << sci(report.eq59_residual) << "\n";
    ss << "branch_probabilities: " << report.branch_probabilities.first << " "
       << report.branch_probabilities.second << "\n";
    ss << "max_infidelity: " << sci(report.max_infidelity) << "\n";
    ss << "trials: " << report.trials << "  seed: " << config.seed << "\n";
    ss << (report.passed ? "PASSED" : "FAILED") << "\n";
    doc = ss.str();
  }
  emit(config, doc, out);
  return report.passed ? kExitPass : kExitFailure;
}

// --------------------------------------------------------------- verify ----

int cmd_verify(const std::string& suite, const CliConfig& config, std::ostream& out,
               std::ostream& err) {
  const SuiteOptions options{config.trials, config.seed, config.tolerance};
  const std::vector<PropertyResult> results = run_suite(suite, options);
  const bool passed = std::all_of(results.begin(), results.end(),
                                  [](const PropertyResult& r) { return r.passed; });

  std::string doc;
  if (config.format == "json") {
    Json props = Json::array();
    for (const auto& r : results) {
      props.push_back(Json{{"suite", r.suite},
                           {"name", r.name},
                           {"value", r.value},
                           {"comparison", r.at_most ? "<=" : ">="},
                           {"threshold", r.threshold},
                           {"trials", r.trials},
                           {"passed", r.passed}});
    }
    Json j{{"suite", suite}, {"trials", config.trials}, {"seed", config.seed},
           {"tolerance", config.tolerance}};
    j["properties"] = std::move(props);
    j["passed"] = passed;
    doc = j.dump(2) + "\n";
  } else {
    std::ostringstream ss;
    for (const auto& r : results) {
      ss << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name << "  "
         << (r.at_most ? "max=" : "min=") << sci(r.value) << " (" << (r.at_most ? "<= " : ">= ")
         << sci(r.threshold) << ", " << r.trials << " trials)\n";
    }
    ss << (passed ? "all properties passed" : "verification FAILED") << "\n";
    doc = ss.str();
  }
  emit(config, doc, out);
  for (const auto& r : results) {
    if (!r.passed) err << "failing property: " << r.suite << "/" << r.name << "\n";
  }
  return passed ? kExitPass : kExitFailure;
}

// ---------------------------------------------------------------- lower ----

Circuit load_circuit(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_circuit(text);
  } catch (const ParseError& e) {
    throw ExitError{kExitUsage, path + ": " + e.what()};
  }
}

int cmd_lower(const CliConfig& config, std::ostream& out) {
  const Circuit circuit = load_circuit(config.input_path);
  emit(config, serialize_program(lower(circuit)), out);
  return kExitPass;
}

// ------------------------------------------------------------- simulate ----

StateVector make_input(const std::string& spec, std::size_t num_qubits, std::uint64_t seed) {
  if (spec == "zeros") return StateVector::zeros(num_qubits);
  if (spec == "random") {
    Rng rng = make_rng(seed, 5);
    return random_state(num_qubits, rng);
  }
  if (spec.rfind("basis:", 0) == 0) {
    const std::string digits = spec.substr(6);
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ExitError{kExitUsage, "malformed --input '" + spec + "'"};
    }
    if (index >= (std::size_t{1} << num_qubits)) {
      throw ExitError{kExitUsage, "--input " + spec + " out of range for " +
                                      std::to_string(num_qubits) + " qubits"};
    }
    return StateVector::basis(num_qubits, index);
  }
  throw ExitError{kExitUsage, "--input must be zeros, basis:k or random"};
}

int cmd_simulate(const std::string& input_spec, const std::string& check_against,
                 const CliConfig& config, std::ostream& out) {
  SwitchProgram program;
  try {
    program = deserialize_program(read_file(config.input_path));
  } catch (const ProgramError& e) {
    throw ExitError{kExitUsage, config.input_path + ": " + e.what()};
  }
  const StateVector input = make_input(input_spec, program.num_data_qubits, config.seed);
  const SimulationTrace trace = simulate_program(program, input, config.seed);

  std::optional<EquivalenceReport> equivalence;
  if (!check_against.empty()) {
    const Circuit circuit = load_circuit(check_against);
    if (circuit.num_qubits != program.num_data_qubits) {
      throw ExitError{kExitUsage, "circuit and program qubit counts differ"};
    }
    equivalence = check_equivalence(circuit, program, config.trials, config.seed, config.tolerance);
  }

  std::string doc;
  if (config.format == "json") {
    Json record = Json::array();
    for (const auto& m : trace.measurement_record) {
      record.push_back(
          Json{{"label", m.label}, {"outcome", to_string(m.outcome)}, {"probability", m.probability}});
    }
    Json j{{"num_qubits", program.num_data_qubits}, {"input", input_spec}, {"seed", trace.seed}};
    j["final_state"] = vector_json(trace.final_state.amplitudes());
    j["measurement_record"] = std::move(record);
    if (equivalence) {
      j["equivalence"] = Json{{"circuit", check_against},
                              {"max_infidelity", equivalence->max_infidelity},
                              {"trials", equivalence->trials},
                              {"seed", equivalence->seed},
                              {"branch_assignments", equivalence->branch_assignments},
                              {"exhaustive", equivalence->exhaustive},
                              {"tolerance", equivalence->tolerance},
                              {"passed", equivalence->passed}};
    }
    doc = j.dump(2) + "\n";
  } else {
    std::ostringstream ss;
    ss << "qubits: " << program.num_data_qubits << "  input: " << input_spec
       << "  seed: " << trace.seed << "\n";
    for (const auto& m : trace.measurement_record) {
      ss << "measure " << m.label << " -> " << to_string(m.outcome) << " (p=" << m.probability
         << ")\n";
    }
    ss << "final state:\n";
    const auto& amps = trace.final_state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      ss << "  " << i << ": " << amps(i).real() << (amps(i).imag() < 0 ? " - " : " + ")
         << std::abs(amps(i).imag()) << "i\n";
    }
    if (equivalence) {
      ss << "equivalence: max_infidelity=" << sci(equivalence->max_infidelity) << " over "
         << equivalence->trials << " trials -> " << (equivalence->passed ? "PASSED" : "FAILED")
         << "\n";
    }
    doc = ss.str();
  }
  emit(config, doc, out);
  return !equivalence || equivalence->passed ? kExitPass : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controlled gates from single-qubit gates in superposed causal orders", "qswitch"};
  app.require_subcommand(1);

  CliConfig synth_config, verify_config, lower_config, simulate_config;
  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "Synthesize a controlled gate and verify the plan");
  synth->add_option("--gate", synth_flags.gate, "Gate to synthesize")
      ->required()
      ->check(CLI::IsMember({"cnot", "cz", "barenco", "cu"}));
  synth->add_option("--alpha", synth_flags.alpha, "Phase angle (cu, barenco)");
  synth->add_option("--theta", synth_flags.theta, "Rotation angle (cu, barenco)");
  synth->add_option("--phi", synth_flags.phi, "Axis azimuth (barenco)");
  synth->add_option("--nx", synth_flags.nx, "Axis x component (cu)");
  synth->add_option("--ny", synth_flags.ny, "Axis y component (cu)");
  synth->add_option("--nz", synth_flags.nz, "Axis z component (cu)");
  add_common(*synth, synth_config);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run randomized property suites");
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"switch", "synthesis", "corollary", "channels", "all"}))
      ->capture_default_str();
  add_common(*verify, verify_config);

  auto* lower_cmd = app.add_subcommand("lower", "Lower a circuit file to a switch program");
  lower_cmd->add_option("input", lower_config.input_path, "Circuit file")->required();
  lower_cmd->add_option("-o,--output", lower_config.output_path, "Program file (default stdout)");

  std::string input_spec = "zeros";
  std::string check_against;
  auto* simulate = app.add_subcommand("simulate", "Execute a switch program");
  simulate->add_option("program", simulate_config.input_path, "Program file")->required();
  simulate->add_option("--input", input_spec, "zeros, basis:k or random")->capture_default_str();
  simulate->add_option("--check-against", check_against,
                       "Circuit file to check equivalence against");
  add_common(*simulate, simulate_config);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(synth_flags, synth_config, out);
    if (*verify) return cmd_verify(suite, verify_config, out, err);
    if (*lower_cmd) return cmd_lower(lower_config, out);
    if (*simulate) return cmd_simulate(input_spec, check_against, simulate_config, out);
  } catch (const ExitError& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qswitch::cli
