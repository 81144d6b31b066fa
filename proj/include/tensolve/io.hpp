// Copyright 2026 The Tensolve Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tensolve/solver.hpp"

namespace tensolve::io {

// Problem files are JSON with a top-level "family" tag; field layouts mirror
// the canonical ProblemSpec. Convenience shorthands (upper-triangle
// couplings, linear knapsack weights, polynomial f) normalize at parse.
ProblemSpec parse_spec(const nlohmann::json& j);
ProblemSpec parse_spec_file(const std::string& path);
nlohmann::ordered_json emit_spec(const ProblemSpec& spec);

struct RunOptions {
  std::string command;  // solve | count | verify | oracle | bench
  std::string spec_path;
  SolverConfig config;
  bool check = false;
  std::uint64_t oracle_budget = std::uint64_t{1} << 20;
  std::optional<std::vector<std::int64_t>> assignment;  // verify input
  bool plan_debug = false;
  unsigned seed = 0;  // reserved for randomized harnesses
};

struct RunOutcome {
  int exit_code = 1;  // 0 feasible, 2 infeasible, 1 error
  nlohmann::ordered_json report;
  std::string log;  // diagnostics destined for stderr
};

RunOutcome run(const RunOptions& options);

}  // namespace tensolve::io
