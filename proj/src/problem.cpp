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

#include "tensolve/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tensolve/tensor.hpp"

namespace tensolve {

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
  for (const auto& [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

double table_abs_max(const Matrix& m) {
  double best = 0.0;
  for (const auto& row : m)
    for (double v : row) best = std::max(best, std::abs(v));
  return best;
}

double hobo_terms_scale(const std::vector<HoboTerm>& terms,
                        const std::vector<std::int64_t>& dims) {
  double best = 0.0;
  for (const HoboTerm& t : terms) {
    if (!t.table.empty()) {
      for (double v : t.table) best = std::max(best, std::abs(v));
    } else {
      double mag = std::abs(t.coeff);
      for (int v : t.vars)
        mag *= static_cast<double>(dims[static_cast<std::size_t>(v)] - 1);
      best = std::max(best, mag);
    }
  }
  return best;
}

}  // namespace

std::string family_name(const ProblemSpec& spec) {
  return std::visit(
      Overload{
          [](const QuboSpec&) { return "qubo"; },
          [](const QudoSpec&) { return "qudo"; },
          [](const TqudoSpec&) { return "tqudo"; },
          [](const HoboSpec&) { return "hobo"; },
          [](const SumFunctionSpec&) { return "sum_function"; },
          [](const NestedSpec&) { return "nested"; },
          [](const AdditionSpec&) { return "addition"; },
          [](const MultiplicationSpec&) { return "multiplication"; },
          [](const LinearSystemSpec&) { return "linear_system"; },
          [](const SingleOneSpec&) { return "single_one"; },
          [](const PartitionSpec&) { return "partition"; },
          [](const ColoringSpec&) { return "coloring"; },
          [](const ShortestPathSpec& s) {
            return s.route_mode ? "shortest_path_route" : "shortest_path_cost";
          },
          [](const TspSpec&) { return "tsp"; },
          [](const KnapsackSpec&) { return "knapsack"; },
          [](const IlpSpec&) { return "ilp"; },
          [](const IqpSpec&) { return "iqp"; },
          [](const IppSpec&) { return "ipp"; },
          [](const MisSpec&) { return "mis"; },
          [](const VertexCoverSpec&) { return "vertex_cover"; },
          [](const DominatingSetSpec&) { return "dominating_set"; },
          [](const AssignmentSpec&) { return "assignment"; },
      },
      spec);
}

std::int64_t shortest_path_cost_extent(const ShortestPathSpec& s) {
  std::int64_t total = 0;
  for (const EdgeMatrix& m : s.cost) {
    std::int64_t step_max = 0;
    for (const auto& row : m)
      for (const auto& e : row)
        if (e) step_max = std::max(step_max, static_cast<std::int64_t>(*e));
    total += step_max;
  }
  return total + 1;
}

std::vector<std::int64_t> variable_dims(const ProblemSpec& spec) {
  using Dims = std::vector<std::int64_t>;
  return std::visit(
      Overload{
          [](const QuboSpec& s) { return Dims(s.q.size(), 2); },
          [](const QudoSpec& s) { return s.dims; },
          [](const TqudoSpec& s) { return s.dims; },
          [](const HoboSpec& s) { return s.dims; },
          [](const SumFunctionSpec& s) { return s.dims; },
          [](const NestedSpec& s) { return s.dims; },
          [](const AdditionSpec& s) {
            return Dims(2 * static_cast<std::size_t>(s.bits), 2);
          },
          [](const MultiplicationSpec& s) {
            return Dims(static_cast<std::size_t>(s.bits_a + s.bits_b), 2);
          },
          [](const LinearSystemSpec& s) { return s.dims; },
          [](const SingleOneSpec& s) { return Dims(static_cast<std::size_t>(s.n), 2); },
          [](const PartitionSpec& s) { return Dims(s.s.size(), 2); },
          [](const ColoringSpec& s) {
            return Dims(static_cast<std::size_t>(s.graph.vertices), s.k);
          },
          [](const ShortestPathSpec& s) {
            if (s.route_mode)
              return Dims(static_cast<std::size_t>(std::max(0, s.steps - 2)),
                          s.vertices);
            return Dims{shortest_path_cost_extent(s)};
          },
          [](const TspSpec& s) {
            const auto v = static_cast<std::int64_t>(s.e.size());
            return Dims(static_cast<std::size_t>(v - 1), v - 1);
          },
          [](const KnapsackSpec& s) {
            Dims d;
            for (std::int64_t c : s.caps) d.push_back(c + 1);
            return d;
          },
          [](const IlpSpec& s) { return s.dims; },
          [](const IqpSpec& s) { return s.dims; },
          [](const IppSpec& s) { return s.dims; },
          [](const MisSpec& s) {
            return Dims(static_cast<std::size_t>(s.graph.vertices), 2);
          },
          [](const VertexCoverSpec& s) {
            return Dims(static_cast<std::size_t>(s.graph.vertices), 2);
          },
          [](const DominatingSetSpec& s) {
            return Dims(static_cast<std::size_t>(s.graph.vertices), 2);
          },
          [](const AssignmentSpec& s) {
            return Dims(s.costs.size(),
                        static_cast<std::int64_t>(s.costs.empty() ? 1 : s.costs[0].size()));
          },
      },
      spec);
}

ProblemKind problem_kind(const ProblemSpec& spec) {
  return std::visit(
      Overload{
          [](const AdditionSpec&) { return ProblemKind::kInversion; },
          [](const MultiplicationSpec&) { return ProblemKind::kInversion; },
          [](const LinearSystemSpec&) { return ProblemKind::kInversion; },
          [](const SingleOneSpec&) { return ProblemKind::kCsp; },
          [](const PartitionSpec&) { return ProblemKind::kCsp; },
          [](const ColoringSpec& s) {
            return (s.minimize_colors || s.vertex_costs) ? ProblemKind::kOptimization
                                                         : ProblemKind::kCsp;
          },
          [](const auto&) { return ProblemKind::kOptimization; },
      },
      spec);
}

double cost_scale(const ProblemSpec& spec) {
  const double s = std::visit(
      Overload{
          [](const QuboSpec& q) { return table_abs_max(q.q); },
          [](const QudoSpec& q) {
            double best = 0.0;
            for (std::size_t i = 0; i < q.q.size(); ++i)
              for (std::size_t j = 0; j <= i; ++j)
                best = std::max(best,
                                std::abs(q.q[i][j]) *
                                    static_cast<double>((q.dims[i] - 1) * (q.dims[j] - 1)));
            return best;
          },
          [](const TqudoSpec& t) {
            double best = 0.0;
            for (const TqudoTerm& term : t.terms) best = std::max(best, table_abs_max(term.table));
            return best;
          },
          [](const HoboSpec& h) { return hobo_terms_scale(h.terms, h.dims); },
          [](const SumFunctionSpec& s) {
            double best = 0.0;
            for (double v : s.f) best = std::max(best, std::abs(v));
            return best;
          },
          [](const NestedSpec& n) {
            double best = 0.0;
            for (const auto& row : n.f.back())
              for (std::int64_t v : row) best = std::max(best, std::abs(static_cast<double>(v)));
            return best;
          },
          [](const ColoringSpec& c) {
            if (c.vertex_costs) return table_abs_max(*c.vertex_costs);
            if (c.minimize_colors) return static_cast<double>(c.k - 1);
            return 1.0;
          },
          [](const ShortestPathSpec& s) {
            double best = 0.0;
            for (const EdgeMatrix& m : s.cost)
              for (const auto& row : m)
                for (const auto& e : row)
                  if (e) best = std::max(best, std::abs(*e));
            return best;
          },
          [](const TspSpec& t) {
            double best = 0.0;
            for (const auto& row : t.e)
              for (const auto& e : row)
                if (e) best = std::max(best, std::abs(*e));
            return best;
          },
          [](const KnapsackSpec& k) {
            double best = 0.0;
            for (const auto& row : k.v)
              for (double v : row) best = std::max(best, std::abs(v));
            return best;
          },
          [](const IlpSpec& s) {
            double best = 0.0;
            for (std::size_t i = 0; i < s.c.size(); ++i)
              best = std::max(best, std::abs(s.c[i]) * static_cast<double>(s.dims[i] - 1));
            return best;
          },
          [](const IqpSpec& s) {
            double best = 0.0;
            for (std::size_t i = 0; i < s.q.size(); ++i)
              for (std::size_t j = 0; j <= i; ++j)
                best = std::max(best,
                                std::abs(s.q[i][j]) *
                                    static_cast<double>((s.dims[i] - 1) * (s.dims[j] - 1)));
            for (std::size_t i = 0; i < s.c.size(); ++i)
              best = std::max(best, std::abs(s.c[i]) * static_cast<double>(s.dims[i] - 1));
            return best;
          },
          [](const IppSpec& s) { return hobo_terms_scale(s.terms, s.dims); },
          [](const DominatingSetSpec& d) {
            double best = 0.0;
            for (double c : d.costs) best = std::max(best, std::abs(c));
            return best;
          },
          [](const AssignmentSpec& a) {
            return std::max(table_abs_max(a.costs), std::abs(a.lambda));
          },
          [](const auto&) { return 1.0; },
      },
      spec);
  return s;
}

namespace {

void check(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

void validate_graph(const Graph& g, const std::string& family) {
  check(g.vertices >= 1, family + ": vertices must be positive");
  for (const auto& [u, v] : g.edges) {
    check(u >= 0 && v >= 0 && u < g.vertices && v < g.vertices,
          family + ": edge endpoint out of range");
    check(u < v, family + ": edges must be canonical (u < v, no self-loops)");
  }
  for (std::size_t i = 1; i < g.edges.size(); ++i)
    check(g.edges[i - 1] < g.edges[i], family + ": edges must be sorted and unique");
}

void validate_dims(const std::vector<std::int64_t>& dims, const std::string& family) {
  check(!dims.empty(), family + ": dims must be nonempty");
  for (std::int64_t d : dims) check(d >= 1, family + ": dims entries must be positive");
}

void validate_lower_triangular(const Matrix& q, const std::string& family) {
  check(!q.empty(), family + ": q must be nonempty");
  for (std::size_t i = 0; i < q.size(); ++i) {
    check(q[i].size() == q.size(), family + ": q must be square");
    for (std::size_t j = i + 1; j < q[i].size(); ++j)
      check(q[i][j] == 0.0, family + ": q must be lower triangular in canonical form");
    for (double v : q[i]) check(std::isfinite(v), family + ": q entries must be finite");
  }
}

void validate_hobo_terms(const std::vector<HoboTerm>& terms,
                         const std::vector<std::int64_t>& dims,
                         const std::string& family) {
  for (const HoboTerm& t : terms) {
    check(!t.vars.empty(), family + ": term needs at least one variable");
    for (std::size_t i = 0; i < t.vars.size(); ++i) {
      check(t.vars[i] >= 0 && static_cast<std::size_t>(t.vars[i]) < dims.size(),
            family + ": term variable out of range");
      if (i + 1 < t.vars.size())
        check(t.vars[i] > t.vars[i + 1],
              family + ": term variables must be strictly decreasing");
    }
    if (!t.table.empty()) {
      std::size_t want = 1;
      for (int v : t.vars) want *= static_cast<std::size_t>(dims[static_cast<std::size_t>(v)]);
      check(t.table.size() == want, family + ": term table size mismatch");
    }
  }
}

void validate_constraints(const IntMatrix& a, const std::vector<std::int64_t>& b,
                          const std::vector<std::int64_t>& dims,
                          const std::string& family) {
  check(a.size() == b.size(), family + ": a and b row counts differ");
  for (const auto& row : a) {
    check(row.size() == dims.size(), family + ": a column count mismatch");
    for (std::int64_t v : row) check(v >= 0, family + ": a entries must be nonnegative");
  }
  for (std::int64_t v : b) check(v >= 0, family + ": b entries must be nonnegative");
}

}  // namespace

void validate_spec(const ProblemSpec& spec) {
  std::visit(
      Overload{
          [](const QuboSpec& s) { validate_lower_triangular(s.q, "qubo"); },
          [](const QudoSpec& s) {
            validate_lower_triangular(s.q, "qudo");
            validate_dims(s.dims, "qudo");
            check(s.dims.size() == s.q.size(), "qudo: dims size must match q");
          },
          [](const TqudoSpec& s) {
            validate_dims(s.dims, "tqudo");
            for (const TqudoTerm& t : s.terms) {
              check(t.i >= 0 && static_cast<std::size_t>(t.i) < s.dims.size() &&
                        t.j >= 0 && static_cast<std::size_t>(t.j) < s.dims.size(),
                    "tqudo: term variable out of range");
              check(t.i >= t.j, "tqudo: terms must have i >= j in canonical form");
              check(t.table.size() == static_cast<std::size_t>(s.dims[static_cast<std::size_t>(t.i)]),
                    "tqudo: term table row count mismatch");
              for (const auto& row : t.table)
                check(row.size() == static_cast<std::size_t>(s.dims[static_cast<std::size_t>(t.j)]),
                      "tqudo: term table column count mismatch");
            }
          },
          [](const HoboSpec& s) {
            validate_dims(s.dims, "hobo");
            validate_hobo_terms(s.terms, s.dims, "hobo");
          },
          [](const SumFunctionSpec& s) {
            validate_dims(s.dims, "sum_function");
            check(s.g.size() == s.dims.size(), "sum_function: g row count mismatch");
            std::int64_t lo = 0, hi = 0;
            for (std::size_t i = 0; i < s.g.size(); ++i) {
              check(s.g[i].size() == static_cast<std::size_t>(s.dims[i]),
                    "sum_function: g row size mismatch");
              std::int64_t mn = s.g[i][0], mx = s.g[i][0];
              for (std::int64_t v : s.g[i]) {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
              }
              lo += mn;
              hi += mx;
            }
            check(s.f_zmin <= lo &&
                      s.f_zmin + static_cast<std::int64_t>(s.f.size()) > hi,
                  "sum_function: f table does not cover the reachable argument range");
          },
          [](const NestedSpec& s) {
            validate_dims(s.dims, "nested");
            check(s.f.size() == s.dims.size(), "nested: f row count mismatch");
            check(!s.f.empty() && !s.f[0].empty(), "nested: f must be nonempty");
            const std::int64_t extent = static_cast<std::int64_t>(s.f[0][0].size());
            check(extent >= 1, "nested: signal extent must be positive");
            check(s.qmin <= 0 && 0 < s.qmin + extent,
                  "nested: signal range must contain 0");
            // Intermediate values that escape the signal range remove the
            // state (filter semantics); only shape is validated here.
            for (std::size_t i = 0; i < s.f.size(); ++i) {
              check(s.f[i].size() == static_cast<std::size_t>(s.dims[i]),
                    "nested: f row size mismatch");
              for (const auto& row : s.f[i])
                check(static_cast<std::int64_t>(row.size()) == extent,
                      "nested: uneven signal extent");
            }
          },
          [](const AdditionSpec& s) {
            check(s.bits >= 1 && s.bits <= 30, "addition: bits out of range");
            check(s.c < (std::uint64_t{1} << (s.bits + 1)),
                  "addition: c needs more than bits+1 bits");
          },
          [](const MultiplicationSpec& s) {
            check(s.bits_a >= 1 && s.bits_b >= 1 && s.bits_a + s.bits_b <= 30,
                  "multiplication: widths out of range");
            check(s.c < (std::uint64_t{1} << (s.bits_a + s.bits_b)),
                  "multiplication: c needs more than bits_a+bits_b bits");
          },
          [](const LinearSystemSpec& s) {
            validate_dims(s.dims, "linear_system");
            validate_constraints(s.a, s.b, s.dims, "linear_system");
            check(!s.a.empty(), "linear_system: a must be nonempty");
          },
          [](const SingleOneSpec& s) { check(s.n >= 1, "single_one: n must be positive"); },
          [](const PartitionSpec& s) {
            check(!s.s.empty(), "partition: s must be nonempty");
            for (std::int64_t v : s.s) check(v >= 1, "partition: s entries must be positive");
          },
          [](const ColoringSpec& s) {
            validate_graph(s.graph, "coloring");
            check(s.k >= 1, "coloring: k must be positive");
            if (s.vertex_costs) {
              check(s.vertex_costs->size() == static_cast<std::size_t>(s.graph.vertices),
                    "coloring: vertex_costs row count mismatch");
              for (const auto& row : *s.vertex_costs)
                check(row.size() == static_cast<std::size_t>(s.k),
                      "coloring: vertex_costs column count mismatch");
            }
          },
          [](const ShortestPathSpec& s) {
            check(s.vertices >= 1, "shortest_path: vertices must be positive");
            check(s.steps >= 2, "shortest_path: steps must be at least 2");
            check(s.source >= 0 && s.source < s.vertices, "shortest_path: source out of range");
            check(s.sink >= 0 && s.sink < s.vertices, "shortest_path: sink out of range");
            check(s.cost.size() == static_cast<std::size_t>(s.steps - 1),
                  "shortest_path: need one cost matrix per transition");
            for (const EdgeMatrix& m : s.cost) {
              check(m.size() == static_cast<std::size_t>(s.vertices),
                    "shortest_path: cost matrix row count mismatch");
              for (const auto& row : m) {
                check(row.size() == static_cast<std::size_t>(s.vertices),
                      "shortest_path: cost matrix column count mismatch");
                for (const auto& e : row)
                  if (e) {
                    check(*e >= 0, "shortest_path: edge costs must be nonnegative");
                    if (!s.route_mode)
                      check(*e == std::floor(*e),
                            "shortest_path: cost mode needs integer edge costs");
                  }
              }
            }
          },
          [](const TspSpec& s) {
            check(s.e.size() >= 3, "tsp: need at least 3 vertices");
            for (const auto& row : s.e)
              check(row.size() == s.e.size(), "tsp: cost matrix must be square");
          },
          [](const KnapsackSpec& s) {
            check(!s.caps.empty(), "knapsack: needs at least one item");
            check(s.capacity >= 0, "knapsack: capacity must be nonnegative");
            check(s.w.size() == s.caps.size() && s.v.size() == s.caps.size(),
                  "knapsack: weights/values row count mismatch");
            for (std::size_t i = 0; i < s.caps.size(); ++i) {
              check(s.caps[i] >= 0, "knapsack: caps entries must be nonnegative");
              check(s.w[i].size() == static_cast<std::size_t>(s.caps[i] + 1),
                    "knapsack: weights row size mismatch");
              check(s.v[i].size() == static_cast<std::size_t>(s.caps[i] + 1),
                    "knapsack: values row size mismatch");
              for (std::int64_t w : s.w[i])
                check(w >= 0, "knapsack: weights must be nonnegative");
            }
            if (s.variant == KnapsackVariant::kPolynomial) {
              check(!s.poly.empty(), "knapsack: polynomial variant needs coefficients");
              for (std::int64_t a : s.poly)
                check(a >= 0, "knapsack: polynomial coefficients must be nonnegative");
            }
          },
          [](const IlpSpec& s) {
            validate_dims(s.dims, "ilp");
            check(s.c.size() == s.dims.size(), "ilp: c size mismatch");
            validate_constraints(s.a, s.b, s.dims, "ilp");
          },
          [](const IqpSpec& s) {
            validate_dims(s.dims, "iqp");
            validate_lower_triangular(s.q, "iqp");
            check(s.q.size() == s.dims.size(), "iqp: q size mismatch");
            check(s.c.size() == s.dims.size(), "iqp: c size mismatch");
            validate_constraints(s.a, s.b, s.dims, "iqp");
          },
          [](const IppSpec& s) {
            validate_dims(s.dims, "ipp");
            validate_hobo_terms(s.terms, s.dims, "ipp");
            validate_constraints(s.a, s.b, s.dims, "ipp");
          },
          [](const MisSpec& s) { validate_graph(s.graph, "mis"); },
          [](const VertexCoverSpec& s) { validate_graph(s.graph, "vertex_cover"); },
          [](const DominatingSetSpec& s) {
            validate_graph(s.graph, "dominating_set");
            check(s.costs.size() == static_cast<std::size_t>(s.graph.vertices),
                  "dominating_set: costs size mismatch");
          },
          [](const AssignmentSpec& s) {
            check(!s.costs.empty(), "assignment: needs at least one agent");
            const std::size_t tasks = s.costs[0].size();
            check(tasks >= 1, "assignment: needs the idle task column");
            for (const auto& row : s.costs) {
              check(row.size() == tasks, "assignment: ragged cost matrix");
              check(row[0] == 0.0, "assignment: idle task must cost 0");
            }
            check(s.lambda > 0.0, "assignment: lambda must be positive");
          },
      },
      spec);
}

}  // namespace tensolve
