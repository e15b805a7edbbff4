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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qswitch/suites.hpp"

namespace qswitch {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qswitch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SynthPresetsPass) {
  for (const std::string gate : {"cnot", "cz"}) {
    const Result r = run_cli({"synth", "--gate", gate});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["target"], gate);
    EXPECT_TRUE(j["passed"]);
    EXPECT_LE(j["residual_plus"].get<double>(), 1e-10);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_EQ(j["trials"], 100);
  }
  const Result b = run_cli({"synth", "--gate", "barenco", "--alpha", "0.1", "--phi", "0.2",
                            "--theta", "0.3", "--format", "text"});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("PASSED"), std::string::npos);
  const Result c = run_cli({"synth", "--gate", "cu", "--alpha", "0.1", "--theta", "0.3", "--nx",
                            "0", "--ny", "3", "--nz", "4"});
  EXPECT_EQ(c.code, 0) << c.err;
}

TEST_F(CliTest, SynthUsageErrors) {
  EXPECT_EQ(run_cli({"synth"}).code, 2);
  EXPECT_EQ(run_cli({"synth", "--gate", "toffoli"}).code, 2);
  EXPECT_EQ(run_cli({"synth", "--gate", "cnot", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run_cli({"synth", "--gate", "cu", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run_cli({"synth", "--gate", "cu", "--alpha", "1", "--theta", "1", "--nx", "0", "--ny",
                     "0", "--nz", "0"})
                .code,
            2);
  EXPECT_EQ(run_cli({"synth", "--gate", "cnot", "--tolerance", "0"}).code, 2);
  EXPECT_EQ(run_cli({"synth", "--gate", "cnot", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, SynthFailsUnderImpossibleTolerance) {
  const Result r = run_cli({"synth", "--gate", "cu", "--alpha", "0.3", "--theta", "1.3", "--nx",
                            "0.6", "--ny", "0", "--nz", "0.8", "--tolerance", "1e-300"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["passed"]);
}

TEST_F(CliTest, SynthSameSeedSameBytes) {
  const std::vector<std::string> args{"synth", "--gate", "cu", "--alpha", "0.3", "--theta", "1.3",
                                      "--nx", "0.6", "--ny", "0", "--nz", "0.8", "--seed", "7"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  std::vector<std::string> with_file = args;
  with_file.insert(with_file.end(), {"-o", path("a.json")});
  ASSERT_EQ(run_cli(with_file).code, 0);
  std::ifstream in(path("a.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run_cli(args).out);
}

TEST_F(CliTest, VerifySuites) {
  for (const std::string suite : {"switch", "synthesis", "corollary", "channels"}) {
    const Result r = run_cli({"verify", "--suite", suite, "--trials", "10"});
    ASSERT_EQ(r.code, 0) << r.err << r.out;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["passed"]);
    EXPECT_FALSE(j["properties"].empty());
    for (const auto& p : j["properties"]) EXPECT_EQ(p["suite"], suite);
  }
  EXPECT_EQ(run_cli({"verify", "--suite", "bogus"}).code, 2);
}

TEST_F(CliTest, VerifyNamesFailingProperty) {
  const Result r = run_cli({"verify", "--suite", "switch", "--trials", "5", "--tolerance", "1e-300"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("failing property: switch/"), std::string::npos);
}

TEST_F(CliTest, LowerAndSimulate) {
  const std::string circ = write("bell.qc", "qubits 2\nh 0\ncnot 0 1\n");
  const std::string prog = path("bell.json");
  ASSERT_EQ(run_cli({"lower", circ, "-o", prog}).code, 0);
  const Result sim = run_cli({"simulate", prog, "--check-against", circ, "--trials", "20"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  const Json j = Json::parse(sim.out);
  const auto& amp = j["final_state"];
  ASSERT_EQ(amp.size(), 4u);
  const double r0 = std::hypot(amp[0][0].get<double>(), amp[0][1].get<double>());
  const double r3 = std::hypot(amp[3][0].get<double>(), amp[3][1].get<double>());
  EXPECT_NEAR(r0, 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(r3, 1 / std::sqrt(2.0), 1e-10);
  EXPECT_EQ(j["measurement_record"].size(), 1u);
  EXPECT_TRUE(j["equivalence"]["passed"]);
  EXPECT_EQ(sim.out, run_cli({"simulate", prog, "--check-against", circ, "--trials", "20"}).out);

  EXPECT_EQ(run_cli({"simulate", prog, "--input", "basis:3"}).code, 0);
  EXPECT_EQ(run_cli({"simulate", prog, "--input", "random", "--seed", "5"}).out,
            run_cli({"simulate", prog, "--input", "random", "--seed", "5"}).out);
  EXPECT_EQ(run_cli({"simulate", prog, "--input", "basis:4"}).code, 2);
  EXPECT_EQ(run_cli({"simulate", prog, "--input", "ones"}).code, 2);
}

TEST_F(CliTest, SimulateDetectsMismatch) {
  const std::string circ = write("c.qc", "qubits 2\ncnot 0 1\n");
  const std::string other = write("cz.qc", "qubits 2\ncz 0 1\n");
  const std::string prog = path("c.json");
  ASSERT_EQ(run_cli({"lower", circ, "-o", prog}).code, 0);
  const Result r = run_cli({"simulate", prog, "--check-against", other});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["equivalence"]["passed"]);
}

TEST_F(CliTest, LowerReportsParseErrors) {
  const std::string bad = write("bad.qc", "qubits 2\nh 0\ncnot 0 7\n");
  const Result r = run_cli({"lower", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3, column 8"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"lower", path("missing.qc")}).code, 2);
}

TEST_F(CliTest, SimulateRejectsBadProgramFiles) {
  EXPECT_EQ(run_cli({"simulate", write("p.json", "{\"num_data_qubits\": 1}")}).code, 2);
  EXPECT_EQ(run_cli({"simulate", write("q.json", "nope")}).code, 2);
  EXPECT_EQ(run_cli({"simulate", path("absent.json")}).code, 2);
}

TEST_F(CliTest, DocumentedExamples) {
  const Result id = run_cli({"synth", "--gate", "cu", "--alpha", "0", "--theta", "0", "--nx", "0",
                             "--ny", "0", "--nz", "1"});
  ASSERT_EQ(id.code, 0) << id.err;
  const Json target = Json::parse(id.out)["target_matrix"];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(target[i][j][0].get<double>(), i == j ? 1.0 : 0.0, 1e-15);
      EXPECT_NEAR(target[i][j][1].get<double>(), 0.0, 1e-15);
    }

  const std::string empty = write("empty.qc", "qubits 3\n");
  const Result lowered = run_cli({"lower", empty});
  ASSERT_EQ(lowered.code, 0);
  EXPECT_TRUE(Json::parse(lowered.out)["instructions"].empty());
  const std::string empty_prog = write("empty.json", lowered.out);
  const Json trace = Json::parse(run_cli({"simulate", empty_prog}).out);
  EXPECT_EQ(trace["final_state"].size(), 8u);
  EXPECT_EQ(trace["final_state"][0][0], 1.0);

  const std::string cnot = write("cnot.qc", "qubits 2\ncnot 0 1\n");
  const std::string prog = path("cnot.json");
  ASSERT_EQ(run_cli({"lower", cnot, "-o", prog}).code, 0);
  EXPECT_EQ(Json::parse(run_cli({"lower", cnot}).out)["instructions"].size(), 7u);
  for (const std::string seed : {"1", "2", "3"}) {
    const Json t = Json::parse(run_cli({"simulate", prog, "--input", "basis:2", "--seed", seed}).out);
    const auto& amp = t["final_state"];
    EXPECT_NEAR(std::hypot(amp[3][0].get<double>(), amp[3][1].get<double>()), 1.0, 1e-12);
    EXPECT_NEAR(t["measurement_record"][0]["probability"].get<double>(), 0.5, 1e-12);
  }

  const std::string cz = write("cz.qc", "qubits 2\ncz 0 1\n");
  const std::string cz_prog = path("cz.json");
  ASSERT_EQ(run_cli({"lower", cz, "-o", cz_prog}).code, 0);
  EXPECT_EQ(run_cli({"simulate", cz_prog, "--check-against", cz}).code, 0);

  const Result unknown = run_cli({"lower", write("u.qc", "qubits 2\nfoo 0\n")});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("unknown gate, line 2"), std::string::npos) << unknown.err;
}

TEST(Suites, AllPassAtDefaults) {
  SuiteOptions opts;
  opts.trials = 20;
  for (const auto& r : run_suite("all", opts)) EXPECT_TRUE(r.passed) << r.suite << "/" << r.name;
  EXPECT_TRUE(is_suite_name("channels"));
  EXPECT_FALSE(is_suite_name("everything"));
  EXPECT_THROW(run_suite("everything", opts), std::invalid_argument);
}

}  // namespace
}  // namespace qswitch
