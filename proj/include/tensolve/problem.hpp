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
#include <variant>
#include <vector>

namespace tensolve {

// Problem instances in canonical form. Parsers normalize convenience inputs
// (upper-triangle couplings, linear coefficient shorthands, polynomial f)
// into these shapes, so equality is plain member comparison.

using Matrix = std::vector<std::vector<double>>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
// Edge-cost matrix where absent entries mean "no edge".
using EdgeMatrix = std::vector<std::vector<std::optional<double>>>;

struct QuboSpec {
  Matrix q;  // lower-triangular meaning: cost sums Q[i][j] x_i x_j over j <= i
  bool operator==(const QuboSpec&) const = default;
};

struct QudoSpec {
  Matrix q;
  std::vector<std::int64_t> dims;
  bool operator==(const QudoSpec&) const = default;
};

struct TqudoTerm {
  int i = 0, j = 0;  // i >= j; diagonal terms use table[v][v]
  Matrix table;      // d_i x d_j cost table
  bool operator==(const TqudoTerm&) const = default;
};

struct TqudoSpec {
  std::vector<TqudoTerm> terms;
  std::vector<std::int64_t> dims;
  bool operator==(const TqudoSpec&) const = default;
};

struct HoboTerm {
  std::vector<int> vars;        // strictly decreasing variable ids
  double coeff = 0.0;           // product form: coeff * prod x_v
  std::vector<double> table;    // tensorized form; empty means product form
  bool operator==(const HoboTerm&) const = default;
};

struct HoboSpec {
  std::vector<HoboTerm> terms;
  std::vector<std::int64_t> dims;
  bool operator==(const HoboSpec&) const = default;
};

struct SumFunctionSpec {
  std::vector<std::int64_t> dims;
  IntMatrix g;                  // g[i][x]: integer summand per variable value
  std::vector<double> f;        // f over [f_zmin, f_zmin + f.size())
  std::int64_t f_zmin = 0;
  bool operator==(const SumFunctionSpec&) const = default;
};

struct NestedSpec {
  std::vector<std::int64_t> dims;
  std::int64_t qmin = 0;  // intermediate signal range [qmin, qmin + extent)
  // f[i][x][q - qmin]; rows 0..N-2 must stay inside the signal range, the
  // last row is the final cost.
  std::vector<std::vector<std::vector<std::int64_t>>> f;
  bool operator==(const NestedSpec&) const = default;
};

struct AdditionSpec {
  std::uint64_t c = 0;
  int bits = 1;  // width of each operand
  bool operator==(const AdditionSpec&) const = default;
};

struct MultiplicationSpec {
  std::uint64_t c = 0;
  int bits_a = 1, bits_b = 1;
  bool operator==(const MultiplicationSpec&) const = default;
};

struct LinearSystemSpec {
  IntMatrix a;  // nonnegative
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> dims;  // search extent per unknown
  bool operator==(const LinearSystemSpec&) const = default;
};

struct SingleOneSpec {
  int n = 1;
  bool operator==(const SingleOneSpec&) const = default;
};

struct PartitionSpec {
  std::vector<std::int64_t> s;  // positive integers
  bool operator==(const PartitionSpec&) const = default;
};

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // canonical: u < v, sorted, unique
  bool operator==(const Graph&) const = default;
  std::vector<std::vector<int>> adjacency() const;
};

struct ColoringSpec {
  Graph graph;
  int k = 1;
  bool minimize_colors = false;
  std::optional<Matrix> vertex_costs;  // [vertex][color]
  bool operator==(const ColoringSpec&) const = default;
};

struct ShortestPathSpec {
  int vertices = 0;
  std::vector<EdgeMatrix> cost;  // one matrix per transition (steps - 1)
  int source = 0, sink = 0;
  int steps = 2;
  bool route_mode = false;  // false: cost histogram; true: route extraction
  bool operator==(const ShortestPathSpec&) const = default;
};

struct TspSpec {
  EdgeMatrix e;  // V x V, absent = unusable edge
  bool operator==(const TspSpec&) const = default;
};

enum class KnapsackVariant { kLinear, kNonlinear, kPolynomial };

struct KnapsackSpec {
  KnapsackVariant variant = KnapsackVariant::kLinear;
  std::vector<std::int64_t> caps;  // max copies per item; extent = cap + 1
  IntMatrix w;                     // w[i][x]: weight of taking x copies
  Matrix v;                        // v[i][x]: value of taking x copies
  std::int64_t capacity = 0;
  std::vector<std::int64_t> poly;  // F coefficients, nonnegative integers
  bool operator==(const KnapsackSpec&) const = default;
};

struct IlpSpec {
  std::vector<double> c;  // maximize c . x
  IntMatrix a;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> dims;
  bool operator==(const IlpSpec&) const = default;
};

struct IqpSpec {
  Matrix q;               // minimize sum_{j<=i} Q[i][j] x_i x_j + c . x
  std::vector<double> c;
  IntMatrix a;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> dims;
  bool operator==(const IqpSpec&) const = default;
};

struct IppSpec {
  std::vector<HoboTerm> terms;  // minimize the higher-order cost
  IntMatrix a;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> dims;
  bool operator==(const IppSpec&) const = default;
};

struct MisSpec {
  Graph graph;
  bool operator==(const MisSpec&) const = default;
};

struct VertexCoverSpec {
  Graph graph;
  bool operator==(const VertexCoverSpec&) const = default;
};

struct DominatingSetSpec {
  Graph graph;
  std::vector<double> costs;  // per-vertex inclusion cost
  bool operator==(const DominatingSetSpec&) const = default;
};

struct AssignmentSpec {
  Matrix costs;         // costs[agent][task]; task 0 is idle and free
  double lambda = 0.0;  // bonus per non-idle task (resolved at parse)
  bool operator==(const AssignmentSpec&) const = default;
};

using ProblemSpec =
    std::variant<QuboSpec, QudoSpec, TqudoSpec, HoboSpec, SumFunctionSpec,
                 NestedSpec, AdditionSpec, MultiplicationSpec, LinearSystemSpec,
                 SingleOneSpec, PartitionSpec, ColoringSpec, ShortestPathSpec,
                 TspSpec, KnapsackSpec, IlpSpec, IqpSpec, IppSpec, MisSpec,
                 VertexCoverSpec, DominatingSetSpec, AssignmentSpec>;

// Family tag used by the file format and reports.
std::string family_name(const ProblemSpec& spec);

// Per-variable extents, identical to the builder's variable layout order.
std::vector<std::int64_t> variable_dims(const ProblemSpec& spec);

// Extent of the cost-histogram leg for shortest-path cost instances.
std::int64_t shortest_path_cost_extent(const ShortestPathSpec& s);

enum class ProblemKind { kInversion, kCsp, kOptimization };
ProblemKind problem_kind(const ProblemSpec& spec);

// Largest |cost term| entering an exponent; used to pick the default tau.
double cost_scale(const ProblemSpec& spec);

// Structural validation of a canonical spec; throws InvalidArgument with a
// field-naming message on violation.
void validate_spec(const ProblemSpec& spec);

}  // namespace tensolve
