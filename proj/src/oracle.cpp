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

#include "tensolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tensolve/tensor.hpp"

namespace tensolve::oracle {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

using Assignment = std::span<const std::int64_t>;

double quadratic_cost(const Matrix& q, Assignment x) {
  double cost = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      cost += q[i][j] * static_cast<double>(x[i]) * static_cast<double>(x[j]);
  return cost;
}

double hobo_cost(const std::vector<HoboTerm>& terms,
                 const std::vector<std::int64_t>& dims, Assignment x) {
  double cost = 0.0;
  for (const HoboTerm& t : terms) {
    if (t.table.empty()) {
      double prod = t.coeff;
      for (int v : t.vars) prod *= static_cast<double>(x[static_cast<std::size_t>(v)]);
      cost += prod;
    } else {
      std::size_t key = 0;
      for (int v : t.vars)
        key = key * static_cast<std::size_t>(dims[static_cast<std::size_t>(v)]) +
              static_cast<std::size_t>(x[static_cast<std::size_t>(v)]);
      cost += t.table[key];
    }
  }
  return cost;
}

bool linear_feasible(const IntMatrix& a, const std::vector<std::int64_t>& b,
                     Assignment x, bool equality) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < a[i].size(); ++j) sum += a[i][j] * x[j];
    if (equality ? sum != b[i] : sum > b[i]) return false;
  }
  return true;
}

PointEval eval_point(const ProblemSpec& spec, Assignment x) {
  return std::visit(
      Overload{
          [&](const QuboSpec& s) { return PointEval{true, quadratic_cost(s.q, x)}; },
          [&](const QudoSpec& s) { return PointEval{true, quadratic_cost(s.q, x)}; },
          [&](const TqudoSpec& s) {
            double cost = 0.0;
            for (const TqudoTerm& t : s.terms)
              cost += t.table[static_cast<std::size_t>(x[static_cast<std::size_t>(t.i)])]
                             [static_cast<std::size_t>(x[static_cast<std::size_t>(t.j)])];
            return PointEval{true, cost};
          },
          [&](const HoboSpec& s) { return PointEval{true, hobo_cost(s.terms, s.dims, x)}; },
          [&](const SumFunctionSpec& s) {
            std::int64_t z = 0;
            for (std::size_t i = 0; i < s.g.size(); ++i)
              z += s.g[i][static_cast<std::size_t>(x[i])];
            return PointEval{true, s.f[static_cast<std::size_t>(z - s.f_zmin)]};
          },
          [&](const NestedSpec& s) {
            const auto extent = static_cast<std::int64_t>(s.f[0][0].size());
            std::int64_t q = 0;
            for (std::size_t i = 0; i < s.f.size(); ++i) {
              q = s.f[i][static_cast<std::size_t>(x[i])][static_cast<std::size_t>(q - s.qmin)];
              // An escaped intermediate signal removes the state.
              if (i + 1 < s.f.size() && (q < s.qmin || q >= s.qmin + extent))
                return PointEval{false, 0.0};
            }
            return PointEval{true, static_cast<double>(q)};
          },
          [&](const AdditionSpec& s) {
            std::uint64_t a = 0, b = 0;
            for (int i = 0; i < s.bits; ++i) {
              a |= static_cast<std::uint64_t>(x[2 * static_cast<std::size_t>(i)]) << i;
              b |= static_cast<std::uint64_t>(x[2 * static_cast<std::size_t>(i) + 1]) << i;
            }
            return PointEval{a + b == s.c, 0.0};
          },
          [&](const MultiplicationSpec& s) {
            std::uint64_t a = 0, b = 0;
            for (int i = 0; i < s.bits_a; ++i)
              a |= static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)]) << i;
            for (int i = 0; i < s.bits_b; ++i)
              b |= static_cast<std::uint64_t>(x[static_cast<std::size_t>(s.bits_a + i)]) << i;
            return PointEval{a * b == s.c, 0.0};
          },
          [&](const LinearSystemSpec& s) {
            return PointEval{linear_feasible(s.a, s.b, x, /*equality=*/true), 0.0};
          },
          [&](const SingleOneSpec&) {
            std::int64_t ones = 0;
            for (std::int64_t v : x) ones += v;
            return PointEval{ones == 1, 0.0};
          },
          [&](const PartitionSpec& s) {
            std::int64_t diff = 0;
            for (std::size_t i = 0; i < s.s.size(); ++i)
              diff += (x[i] == 0 ? s.s[i] : -s.s[i]);
            return PointEval{diff == 0, 0.0};
          },
          [&](const ColoringSpec& s) {
            for (const auto& [u, v] : s.graph.edges)
              if (x[static_cast<std::size_t>(u)] == x[static_cast<std::size_t>(v)])
                return PointEval{false, 0.0};
            double cost = 0.0;
            if (s.vertex_costs) {
              for (std::size_t i = 0; i < x.size(); ++i)
                cost += (*s.vertex_costs)[i][static_cast<std::size_t>(x[i])];
            } else if (s.minimize_colors) {
              for (std::int64_t v : x) cost += static_cast<double>(v);
            }
            return PointEval{true, cost};
          },
          [&](const ShortestPathSpec& s) {
            if (!s.route_mode)
              throw InvalidArgument(
                  "shortest_path_cost verify takes a single histogram position");
            double cost = 0.0;
            std::int64_t prev = s.source;
            for (std::size_t t = 0; t < s.cost.size(); ++t) {
              const std::int64_t next =
                  (t + 1 == s.cost.size()) ? s.sink : x[t];
              const auto& e = s.cost[t][static_cast<std::size_t>(prev)]
                                    [static_cast<std::size_t>(next)];
              if (!e) return PointEval{false, 0.0};
              cost += *e;
              prev = next;
            }
            return PointEval{true, cost};
          },
          [&](const TspSpec& s) {
            const std::int64_t v = static_cast<std::int64_t>(s.e.size());
            std::vector<bool> seen(static_cast<std::size_t>(v - 1), false);
            for (std::int64_t c : x) {
              if (c < 0 || c >= v - 1 || seen[static_cast<std::size_t>(c)])
                return PointEval{false, 0.0};
              seen[static_cast<std::size_t>(c)] = true;
            }
            double cost = 0.0;
            std::int64_t prev = v - 1;
            for (std::int64_t c : x) {
              const auto& e = s.e[static_cast<std::size_t>(prev)][static_cast<std::size_t>(c)];
              if (!e) return PointEval{false, 0.0};
              cost += *e;
              prev = c;
            }
            const auto& back = s.e[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v - 1)];
            if (!back) return PointEval{false, 0.0};
            cost += *back;
            return PointEval{true, cost};
          },
          [&](const KnapsackSpec& s) {
            std::int64_t weight = 0;
            double value = 0.0;
            for (std::size_t i = 0; i < s.caps.size(); ++i) {
              weight += s.w[i][static_cast<std::size_t>(x[i])];
              value += s.v[i][static_cast<std::size_t>(x[i])];
            }
            std::int64_t measure = weight;
            if (s.variant == KnapsackVariant::kPolynomial) {
              std::int64_t f = 0, p = 1;
              for (std::int64_t a : s.poly) {
                f += a * p;
                p *= weight;
              }
              measure = f;
            }
            return PointEval{measure <= s.capacity, -value};
          },
          [&](const IlpSpec& s) {
            if (!linear_feasible(s.a, s.b, x, false)) return PointEval{false, 0.0};
            double obj = 0.0;
            for (std::size_t i = 0; i < s.c.size(); ++i)
              obj += s.c[i] * static_cast<double>(x[i]);
            return PointEval{true, -obj};
          },
          [&](const IqpSpec& s) {
            if (!linear_feasible(s.a, s.b, x, false)) return PointEval{false, 0.0};
            double cost = quadratic_cost(s.q, x);
            for (std::size_t i = 0; i < s.c.size(); ++i)
              cost += s.c[i] * static_cast<double>(x[i]);
            return PointEval{true, cost};
          },
          [&](const IppSpec& s) {
            if (!linear_feasible(s.a, s.b, x, false)) return PointEval{false, 0.0};
            return PointEval{true, hobo_cost(s.terms, s.dims, x)};
          },
          [&](const MisSpec& s) {
            for (const auto& [u, v] : s.graph.edges)
              if (x[static_cast<std::size_t>(u)] == 1 && x[static_cast<std::size_t>(v)] == 1)
                return PointEval{false, 0.0};
            std::int64_t size = 0;
            for (std::int64_t b : x) size += b;
            return PointEval{true, -static_cast<double>(size)};
          },
          [&](const VertexCoverSpec& s) {
            for (const auto& [u, v] : s.graph.edges)
              if (x[static_cast<std::size_t>(u)] == 0 && x[static_cast<std::size_t>(v)] == 0)
                return PointEval{false, 0.0};
            std::int64_t size = 0;
            for (std::int64_t b : x) size += b;
            return PointEval{true, static_cast<double>(size)};
          },
          [&](const DominatingSetSpec& s) {
            const auto adj = s.graph.adjacency();
            for (int v = 0; v < s.graph.vertices; ++v) {
              std::int64_t covered = x[static_cast<std::size_t>(v)];
              for (int u : adj[static_cast<std::size_t>(v)])
                covered += x[static_cast<std::size_t>(u)];
              if (covered < 1) return PointEval{false, 0.0};
            }
            double cost = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
              cost += s.costs[i] * static_cast<double>(x[i]);
            return PointEval{true, cost};
          },
          [&](const AssignmentSpec& s) {
            std::vector<bool> taken(s.costs[0].size(), false);
            double cost = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const auto task = static_cast<std::size_t>(x[i]);
              if (task != 0) {
                if (taken[task]) return PointEval{false, 0.0};
                taken[task] = true;
                cost -= s.lambda;
              }
              cost += s.costs[i][task];
            }
            return PointEval{true, cost};
          },
      },
      spec);
}

// Feasible total costs of a shortest-path cost instance, with multiplicity.
std::map<std::int64_t, std::uint64_t> path_cost_histogram(const ShortestPathSpec& s,
                                                          std::uint64_t limit,
                                                          std::uint64_t* evaluations) {
  const int interior = std::max(0, s.steps - 2);
  std::uint64_t states = 1;
  for (int i = 0; i < interior; ++i) {
    states *= static_cast<std::uint64_t>(s.vertices);
    if (states > limit) throw BudgetExceeded("oracle state budget exceeded");
  }
  std::map<std::int64_t, std::uint64_t> hist;
  std::vector<std::int64_t> x(static_cast<std::size_t>(interior), 0);
  ShortestPathSpec route = s;
  route.route_mode = true;
  // Cost mode pads unused steps with free self-loops.
  for (EdgeMatrix& m : route.cost)
    for (std::size_t v = 0; v < m.size(); ++v) m[v][v] = 0.0;
  while (true) {
    ++*evaluations;
    const PointEval pe = eval_point(ProblemSpec{route}, x);
    if (pe.feasible) ++hist[static_cast<std::int64_t>(std::llround(pe.cost))];
    int pos = interior - 1;
    while (pos >= 0 && ++x[static_cast<std::size_t>(pos)] ==
                           static_cast<std::int64_t>(s.vertices)) {
      x[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return hist;
}

}  // namespace

std::uint64_t state_space(const ProblemSpec& spec) {
  std::uint64_t states = 1;
  for (std::int64_t d : variable_dims(spec)) {
    const auto ud = static_cast<std::uint64_t>(d);
    if (states > std::numeric_limits<std::int64_t>::max() / ud)
      return std::numeric_limits<std::int64_t>::max();
    states *= ud;
  }
  return states;
}

PointEval verify(const ProblemSpec& spec, std::span<const std::int64_t> assignment) {
  const std::vector<std::int64_t> dims = variable_dims(spec);
  if (assignment.size() != dims.size())
    throw InvalidArgument("assignment length does not match variable count");
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (assignment[i] < 0 || assignment[i] >= dims[i])
      throw InvalidArgument("assignment value out of range");

  // Histogram position for the cost mode: feasible iff some path costs that.
  if (const auto* sp = std::get_if<ShortestPathSpec>(&spec); sp && !sp->route_mode) {
    std::uint64_t evals = 0;
    const auto hist = path_cost_histogram(*sp, std::uint64_t{1} << 22, &evals);
    const auto it = hist.find(assignment[0]);
    return {it != hist.end(), static_cast<double>(assignment[0])};
  }
  return eval_point(spec, assignment);
}

OracleResult enumerate(const ProblemSpec& spec, std::uint64_t limit) {
  OracleResult out;
  out.optimization = problem_kind(spec) == ProblemKind::kOptimization;

  if (const auto* sp = std::get_if<ShortestPathSpec>(&spec); sp && !sp->route_mode) {
    out.histogram = path_cost_histogram(*sp, limit, &out.evaluations);
    for (const auto& [cost, count] : out.histogram) out.feasible_count += count;
    if (!out.histogram.empty()) {
      out.has_optimum = true;
      out.best_cost = static_cast<double>(out.histogram.begin()->first);
      out.best_assignments = {{out.histogram.begin()->first}};
    }
    return out;
  }

  const std::vector<std::int64_t> dims = variable_dims(spec);
  if (state_space(spec) > limit) throw BudgetExceeded("oracle state budget exceeded");

  std::vector<std::int64_t> x(dims.size(), 0);
  while (true) {
    ++out.evaluations;
    const PointEval pe = eval_point(spec, x);
    if (pe.feasible) {
      ++out.feasible_count;
      if (out.optimization) {
        if (!out.has_optimum || pe.cost < out.best_cost - 1e-12) {
          out.has_optimum = true;
          out.best_cost = pe.cost;
          out.best_assignments.assign(1, x);
        } else if (pe.cost <= out.best_cost + 1e-12) {
          out.best_cost = std::min(out.best_cost, pe.cost);
          out.best_assignments.push_back(x);
        }
      } else {
        out.has_optimum = true;
        out.feasible.push_back(x);
      }
    }
    std::size_t pos = dims.size();
    while (pos > 0) {
      --pos;
      if (++x[pos] < dims[pos]) break;
      x[pos] = 0;
      if (pos == 0) return out;
    }
    if (dims.empty()) break;
  }
  return out;
}

OracleResult knapsack_dp(const KnapsackSpec& spec) {
  OracleResult out;
  out.optimization = true;

  std::int64_t max_weight = 0;
  for (std::size_t i = 0; i < spec.caps.size(); ++i)
    max_weight += *std::max_element(spec.w[i].begin(), spec.w[i].end());

  constexpr double kNoValue = -std::numeric_limits<double>::infinity();
  std::vector<double> best(static_cast<std::size_t>(max_weight + 1), kNoValue);
  best[0] = 0.0;
  for (std::size_t i = 0; i < spec.caps.size(); ++i) {
    std::vector<double> next(best.size(), kNoValue);
    for (std::size_t w = 0; w < best.size(); ++w) {
      if (best[w] == kNoValue) continue;
      for (std::int64_t x = 0; x <= spec.caps[i]; ++x) {
        const std::size_t nw = w + static_cast<std::size_t>(spec.w[i][static_cast<std::size_t>(x)]);
        const double nv = best[w] + spec.v[i][static_cast<std::size_t>(x)];
        if (nv > next[nw]) next[nw] = nv;
      }
    }
    best = std::move(next);
    ++out.evaluations;
  }

  for (std::size_t w = 0; w < best.size(); ++w) {
    if (best[w] == kNoValue) continue;
    std::int64_t measure = static_cast<std::int64_t>(w);
    if (spec.variant == KnapsackVariant::kPolynomial) {
      std::int64_t f = 0, p = 1;
      for (std::int64_t a : spec.poly) {
        f += a * p;
        p *= static_cast<std::int64_t>(w);
      }
      measure = f;
    }
    if (measure > spec.capacity) continue;
    const double cost = -best[w];
    if (!out.has_optimum || cost < out.best_cost) {
      out.has_optimum = true;
      out.best_cost = cost;
    }
  }
  return out;
}

}  // namespace tensolve::oracle
