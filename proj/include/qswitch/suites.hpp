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

// Randomized property suites behind `qswitch verify`.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qswitch {

struct PropertyResult {
  std::string suite;
  std::string name;
  /// Worst observed value: a maximum residual for "<=" properties, a minimum
  /// for ">=" properties.
  double value = 0.0;
  double threshold = 0.0;
  bool at_most = true;  // value <= threshold when true, value >= threshold otherwise
  std::size_t trials = 0;
  bool passed = false;
};

struct SuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  /// Bound for unitarity and equality residuals. Pure algebraic identities
  /// keep 1e-12 and positivity keeps -1e-9 regardless.
  double tolerance = 1e-10;
};

std::vector<PropertyResult> run_switch_suite(const SuiteOptions& options);
std::vector<PropertyResult> run_synthesis_suite(const SuiteOptions& options);
std::vector<PropertyResult> run_corollary_suite(const SuiteOptions& options);
std::vector<PropertyResult> run_channels_suite(const SuiteOptions& options);

bool is_suite_name(std::string_view name);
/// "switch", "synthesis", "corollary", "channels" or "all".
std::vector<PropertyResult> run_suite(std::string_view name, const SuiteOptions& options);

}  // namespace qswitch
