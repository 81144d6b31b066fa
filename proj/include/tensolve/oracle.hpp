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
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "tensolve/problem.hpp"

namespace tensolve::oracle {

// Exhaustive references for every family. Shares the parsed ProblemSpec with
// the solver path but none of the tensor machinery.

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointEval {
  bool feasible = false;
  double cost = 0.0;  // solver-facing cost: always minimized
};

// Evaluates one assignment. The assignment uses variable_dims() order.
PointEval verify(const ProblemSpec& spec, std::span<const std::int64_t> assignment);

struct OracleResult {
  bool optimization = false;
  bool has_optimum = false;  // false when no feasible point exists
  double best_cost = 0.0;
  // All optimal assignments, lexicographic (optimization families).
  std::vector<std::vector<std::int64_t>> best_assignments;
  std::uint64_t feasible_count = 0;
  // Feasible assignments, lexicographic (CSP/inversion families).
  std::vector<std::vector<std::int64_t>> feasible;
  std::uint64_t evaluations = 0;
  // Cost histogram for shortest-path cost instances (paths per total cost).
  std::map<std::int64_t, std::uint64_t> histogram;
};

// Exhaustive enumeration; refuses (never samples) when the state space
// exceeds `limit`.
OracleResult enumerate(const ProblemSpec& spec, std::uint64_t limit);

// Capacity-indexed dynamic program for knapsack instances; agrees with
// enumerate() wherever both run.
OracleResult knapsack_dp(const KnapsackSpec& spec);

// Product of variable extents, saturating at 2^63-1.
std::uint64_t state_space(const ProblemSpec& spec);

}  // namespace tensolve::oracle
