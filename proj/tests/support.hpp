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

// Shared checks for the builder test suites: oracle-anchored solve checks
// and the two amplitude identities every weighted network must satisfy.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tensolve/io.hpp"
#include "tensolve/solver.hpp"

namespace tensolve::testsupport {

// Full contraction with one boundary vector per variable.
inline double network_value(const BuiltProblem& built,
                            const std::vector<SparseTensor>& boundaries) {
  TensorNetwork closed = built.net;
  for (std::size_t k = 0; k < built.layout.variables.size(); ++k)
    closed = attach_boundary(closed, built.layout.variables[k].label, boundaries[k]);
  const ContractionResult res = contract(closed);
  if (res.degenerate) return 0.0;
  return res.tensor.scalar().real() * std::exp(res.log_scale + built.log_offset);
}

// Sum over all assignments of e^{-tau * cost} over the feasible set, straight
// from the point oracle.
inline double brute_force_partition_function(const ProblemSpec& spec, double tau) {
  const auto dims = variable_dims(spec);
  std::vector<std::int64_t> x(dims.size(), 0);
  double total = 0.0;
  while (true) {
    const auto pe = oracle::verify(spec, x);
    if (pe.feasible) total += std::exp(-tau * pe.cost);
    std::size_t pos = dims.size();
    bool done = dims.empty();
    while (pos > 0) {
      --pos;
      if (++x[pos] < dims[pos]) break;
      x[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  return total;
}

// Plus vectors everywhere must reproduce the brute-force partition function.
inline void check_partition_identity(const ProblemSpec& spec, double tau,
                                     double rel_tol = 1e-9) {
  BuildContext ctx;
  ctx.tau = tau;
  const BuiltProblem built = build_network(spec, ctx);
  std::vector<SparseTensor> plus;
  for (const auto& var : built.layout.variables) plus.push_back(make_plus(var.dim));
  const double lhs = network_value(built, plus);
  const double rhs = brute_force_partition_function(spec, tau);
  REQUIRE(std::abs(lhs - rhs) <= rel_tol * std::max({1e-300, std::abs(rhs)}));
}

// Projecting every leg onto x must give e^{-tau cost(x)} when feasible, 0
// otherwise.
inline void check_projection_identity(const ProblemSpec& spec, double tau,
                                      const std::vector<std::int64_t>& x,
                                      double rel_tol = 1e-9) {
  BuildContext ctx;
  ctx.tau = tau;
  const BuiltProblem built = build_network(spec, ctx);
  std::vector<SparseTensor> proj;
  for (std::size_t k = 0; k < built.layout.variables.size(); ++k)
    proj.push_back(make_projection(built.layout.variables[k].dim, x[k]));
  const double lhs = network_value(built, proj);
  const auto pe = oracle::verify(spec, x);
  const double rhs = pe.feasible ? std::exp(-tau * pe.cost) : 0.0;
  REQUIRE(std::abs(lhs - rhs) <= rel_tol * std::max(1e-300, std::abs(rhs)));
}

// Checks every assignment against the projection identity (small instances).
inline void check_projection_identity_all(const ProblemSpec& spec, double tau) {
  const auto dims = variable_dims(spec);
  std::vector<std::int64_t> x(dims.size(), 0);
  while (true) {
    check_projection_identity(spec, tau, x);
    std::size_t pos = dims.size();
    bool done = dims.empty();
    while (pos > 0) {
      --pos;
      if (++x[pos] < dims[pos]) break;
      x[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
}

// Solve and require cost equality with the enumeration oracle (or matching
// infeasibility verdicts).
inline void check_solve_matches_oracle(const ProblemSpec& spec,
                                       SolverConfig config = {},
                                       std::uint64_t budget = std::uint64_t{1} << 20) {
  const auto ref = oracle::enumerate(spec, budget);
  const Solution sol = solve(spec, config);
  if (!ref.has_optimum) {
    REQUIRE(!sol.feasible);
    return;
  }
  REQUIRE(sol.feasible);
  const auto pe = oracle::verify(spec, sol.assignment);
  REQUIRE(pe.feasible);
  REQUIRE(pe.cost == ref.best_cost);
}

}  // namespace tensolve::testsupport
