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

#include <map>
#include <optional>
#include <vector>

#include "tensolve/network.hpp"
#include "tensolve/problem.hpp"

namespace tensolve {

struct BuildContext {
  double tau = 1.0;
  std::optional<int> layer_limit;
  // Values already determined, for builders that rebuild per iteration under
  // a layer limit.
  std::vector<std::int64_t> fixed_prefix;
};

struct BuiltProblem {
  TensorNetwork net;
  VariableLayout layout;
  // True for pure 0/1 filter networks (no imaginary-time weights); these
  // support exact solution counting and need no tau escalation.
  bool unit_amplitudes = false;
  // Node tensors are max-normalized at build so entries stay inside the
  // canonical tolerance window at any tau; this is the exact log of the
  // stripped magnitudes (contract() results multiply by e^{log_offset}).
  double log_offset = 0.0;
  // Masked superposition vectors replacing plus/phase vectors on selected
  // variables (layer-limit rebuilds). Keyed by variable index.
  std::map<std::size_t, SparseTensor> boundary_overrides;
  // Allowed values per masked variable; extraction must not leave the mask.
  std::map<std::size_t, std::vector<char>> allowed_values;
};

// Dispatches to the family builder below.
BuiltProblem build_network(const ProblemSpec& spec, const BuildContext& ctx);

// True when the family consumes BuildContext::layer_limit.
bool supports_layer_limit(const ProblemSpec& spec);

BuiltProblem build_quadratic(const QuboSpec& spec, const BuildContext& ctx);
BuiltProblem build_quadratic(const QudoSpec& spec, const BuildContext& ctx);
BuiltProblem build_quadratic(const TqudoSpec& spec, const BuildContext& ctx);
BuiltProblem build_hobo(const HoboSpec& spec, const BuildContext& ctx);
BuiltProblem build_sum_function(const SumFunctionSpec& spec, const BuildContext& ctx);
BuiltProblem build_nested(const NestedSpec& spec, const BuildContext& ctx);
BuiltProblem build_addition_inverter(const AdditionSpec& spec, const BuildContext& ctx);
BuiltProblem build_multiplication_inverter(const MultiplicationSpec& spec,
                                           const BuildContext& ctx);
BuiltProblem build_linear_system(const LinearSystemSpec& spec, const BuildContext& ctx);
BuiltProblem build_single_one(const SingleOneSpec& spec, const BuildContext& ctx);
BuiltProblem build_partition(const PartitionSpec& spec, const BuildContext& ctx);
BuiltProblem build_coloring(const ColoringSpec& spec, const BuildContext& ctx);
BuiltProblem build_shortest_path(const ShortestPathSpec& spec, const BuildContext& ctx);
BuiltProblem build_tsp(const TspSpec& spec, const BuildContext& ctx);
BuiltProblem build_knapsack(const KnapsackSpec& spec, const BuildContext& ctx);
BuiltProblem build_integer_program(const IlpSpec& spec, const BuildContext& ctx);
BuiltProblem build_integer_program(const IqpSpec& spec, const BuildContext& ctx);
BuiltProblem build_integer_program(const IppSpec& spec, const BuildContext& ctx);
BuiltProblem build_mis(const MisSpec& spec, const BuildContext& ctx);
BuiltProblem build_vertex_cover(const VertexCoverSpec& spec, const BuildContext& ctx);
BuiltProblem build_dominating_set(const DominatingSetSpec& spec, const BuildContext& ctx);
BuiltProblem build_assignment(const AssignmentSpec& spec, const BuildContext& ctx);

// MPO layer over n_vars equal-extent wires counting occurrences of `value`.
// Tensor slot layout: first (in, out, count), middles (in, count_in, out,
// count_out), last (in, count_in, out); a single-wire layer is one (in, out)
// tensor. Counting admits at most `bound` occurrences; the repetition layer
// admits exactly `bound`.
std::vector<SparseTensor> build_counting_layer(int n_vars, std::int64_t dim,
                                               std::int64_t value, std::int64_t bound);
std::vector<SparseTensor> build_repetition_layer(int n_vars, std::int64_t dim,
                                                 std::int64_t value, std::int64_t bound);

}  // namespace tensolve
