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

#include <optional>
#include <string>
#include <vector>

#include "tensolve/builders.hpp"
#include "tensolve/oracle.hpp"

namespace tensolve {

struct UnsupportedCount : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct SolverConfig {
  std::optional<double> tau;  // default: 1 / max|cost term|
  bool humbucker = false;     // phase vectors instead of plus vectors
  double tolerance = 1e-9;    // zero threshold, relative to the vector max
  bool escalate = true;
  double growth = 2.0;
  int max_rounds = 16;
  std::optional<int> layer_limit;
};

struct Solution {
  std::vector<std::int64_t> assignment;
  bool feasible = false;
  std::vector<double> margins;  // winner minus runner-up, max-normalized
  double log_amplitude = 0.0;   // log of the winning combination's amplitude
  double tau_used = 0.0;
  bool escalation_converged = true;
  std::vector<double> step_ms;
  std::string note;
};

// One variable determination on an already-built network: the half partial
// trace vector's argmax (ties to the lowest index).
struct StepDecision {
  std::int64_t value = 0;
  double margin = 0.0;
  bool feasible = false;
};
StepDecision determine_variable(const BuiltProblem& built, std::size_t k,
                                const std::vector<std::int64_t>& fixed,
                                const SolverConfig& config);

// Binary cross-check: the minus-vector scalar Omega = v1 - v0; the decision
// is H(Omega) with H(0) = 0.
std::int64_t minus_vector_decision(const std::vector<Amplitude>& amps);

// Full iterative determination with projection of previous results,
// verification against the oracle checker, and tau escalation for
// optimization families.
Solution solve(const ProblemSpec& spec, const SolverConfig& config);

// Runs the iteration loop on a pre-built network at a fixed tau (no
// escalation, no rebuilds). Used by tests that perturb the network.
Solution solve_on_network(const BuiltProblem& built, const SolverConfig& config,
                          double tau_used);

// Plus-vector full contraction of a 0/1 network, rounded to the nearest
// integer. Throws UnsupportedCount for weighted families.
std::int64_t count_solutions(const ProblemSpec& spec);
double count_solutions_value(const ProblemSpec& spec);  // pre-rounding value

double default_tau(const ProblemSpec& spec);

}  // namespace tensolve
