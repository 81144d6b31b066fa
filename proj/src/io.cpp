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

#include "tensolve/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace tensolve::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw InvalidArgument(message); }

const json& field(const json& j, const std::string& name) {
  const auto it = j.find(name);
  if (it == j.end()) fail("missing field '" + name + "'");
  return *it;
}

std::vector<std::int64_t> int_vector(const json& j, const std::string& name) {
  const json& v = field(j, name);
  if (!v.is_array()) fail("field '" + name + "' must be an array");
  std::vector<std::int64_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail("field '" + name + "' must hold integers");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

std::vector<double> double_vector(const json& v, const std::string& name) {
  if (!v.is_array()) fail("field '" + name + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail("field '" + name + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Matrix matrix(const json& j, const std::string& name) {
  const json& v = field(j, name);
  if (!v.is_array()) fail("field '" + name + "' must be a matrix");
  Matrix out;
  for (const auto& row : v) out.push_back(double_vector(row, name));
  return out;
}

IntMatrix int_matrix(const json& j, const std::string& name) {
  const json& v = field(j, name);
  if (!v.is_array()) fail("field '" + name + "' must be a matrix");
  IntMatrix out;
  for (const auto& row : v) {
    std::vector<std::int64_t> r;
    for (const auto& e : row) {
      if (!e.is_number_integer()) fail("field '" + name + "' must hold integers");
      r.push_back(e.get<std::int64_t>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

EdgeMatrix edge_matrix(const json& v, const std::string& name) {
  if (!v.is_array()) fail("field '" + name + "' must be a matrix");
  EdgeMatrix out;
  for (const auto& row : v) {
    std::vector<std::optional<double>> r;
    for (const auto& e : row) {
      if (e.is_null())
        r.push_back(std::nullopt);
      else if (e.is_number())
        r.push_back(e.get<double>());
      else
        fail("field '" + name + "' entries must be numbers or null");
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Folds a possibly full square coupling matrix into the canonical lower
// triangle (q[i][j] += q[j][i] for j < i).
Matrix fold_lower(Matrix q, const std::string& family) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].size() != q.size()) fail(family + ": q must be square");
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      q[j][i] += q[i][j];
      q[i][j] = 0.0;
    }
  }
  return q;
}

Graph parse_graph(const json& j, const std::string& family) {
  Graph g;
  g.vertices = static_cast<int>(field(j, "vertices").get<std::int64_t>());
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) fail(family + ": edges must be [u, v] pairs");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u == v) fail(family + ": self-loop edge");
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

HoboTerm parse_hobo_term(const json& j, const std::vector<std::int64_t>& dims,
                         const std::string& family) {
  HoboTerm term;
  std::vector<int> raw;
  for (const auto& v : field(j, "vars")) raw.push_back(v.get<int>());
  if (raw.empty()) fail(family + ": term needs variables");
  for (int v : raw)
    if (v < 0 || static_cast<std::size_t>(v) >= dims.size())
      fail(family + ": term variable out of range");

  std::map<int, int> multiplicity;
  for (int v : raw) ++multiplicity[v];
  std::vector<int> unique_desc;
  for (const auto& [v, m] : multiplicity) unique_desc.push_back(v);
  std::sort(unique_desc.rbegin(), unique_desc.rend());

  const bool has_table = j.contains("table");
  if (has_table) {
    if (unique_desc.size() != raw.size())
      fail(family + ": table terms cannot repeat variables");
    term.vars = unique_desc;
    term.table = double_vector(field(j, "table"), "table");
    return term;
  }

  const double coeff = field(j, "coeff").get<double>();
  term.vars = unique_desc;
  if (unique_desc.size() == raw.size()) {
    term.coeff = coeff;
    return term;
  }
  // Fold self-interactions into a value table over the distinct variables.
  std::size_t size = 1;
  for (int v : term.vars) size *= static_cast<std::size_t>(dims[static_cast<std::size_t>(v)]);
  term.table.assign(size, 0.0);
  std::vector<std::int64_t> vals(term.vars.size(), 0);
  for (std::size_t key = 0; key < size; ++key) {
    std::size_t rest = key;
    double prod = coeff;
    for (std::size_t i = term.vars.size(); i-- > 0;) {
      const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(term.vars[i])]);
      vals[i] = static_cast<std::int64_t>(rest % d);
      rest /= d;
    }
    for (std::size_t i = 0; i < term.vars.size(); ++i)
      for (int m = 0; m < multiplicity[term.vars[i]]; ++m)
        prod *= static_cast<double>(vals[i]);
    term.table[key] = prod;
  }
  return term;
}

std::vector<HoboTerm> parse_hobo_terms(const json& j, const std::vector<std::int64_t>& dims,
                                       const std::string& family) {
  std::vector<HoboTerm> out;
  for (const auto& t : field(j, "terms")) out.push_back(parse_hobo_term(t, dims, family));
  return out;
}

SumFunctionSpec parse_sum_function(const json& j) {
  SumFunctionSpec s;
  s.dims = int_vector(j, "dims");
  if (j.contains("coeffs")) {
    const auto coeffs = int_vector(j, "coeffs");
    if (coeffs.size() != s.dims.size()) fail("sum_function: coeffs size mismatch");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::vector<std::int64_t> row;
      for (std::int64_t x = 0; x < s.dims[i]; ++x) row.push_back(coeffs[i] * x);
      s.g.push_back(std::move(row));
    }
  } else {
    s.g = int_matrix(j, "g");
  }

  std::int64_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < s.g.size(); ++i) {
    if (s.g[i].size() != static_cast<std::size_t>(s.dims[i]))
      fail("sum_function: g row size mismatch");
    const auto [mn, mx] = std::minmax_element(s.g[i].begin(), s.g[i].end());
    lo += *mn;
    hi += *mx;
  }

  const json& f = field(j, "f");
  const std::string type = field(f, "type").get<std::string>();
  s.f_zmin = lo;
  s.f.clear();
  if (type == "poly") {
    const auto coeffs = double_vector(field(f, "coeffs"), "f.coeffs");
    for (std::int64_t z = lo; z <= hi; ++z) {
      double val = 0.0, p = 1.0;
      for (double c : coeffs) {
        val += c * p;
        p *= static_cast<double>(z);
      }
      s.f.push_back(val);
    }
  } else if (type == "table") {
    const std::int64_t zmin = field(f, "zmin").get<std::int64_t>();
    const auto values = double_vector(field(f, "values"), "f.values");
    if (zmin > lo || zmin + static_cast<std::int64_t>(values.size()) <= hi)
      fail("sum_function: f table does not cover the reachable argument range");
    for (std::int64_t z = lo; z <= hi; ++z)
      s.f.push_back(values[static_cast<std::size_t>(z - zmin)]);
  } else {
    fail("sum_function: f.type must be 'poly' or 'table'");
  }
  return s;
}

KnapsackSpec parse_knapsack(const json& j) {
  KnapsackSpec s;
  const std::string variant =
      j.contains("variant") ? field(j, "variant").get<std::string>() : "linear";
  if (variant == "linear")
    s.variant = KnapsackVariant::kLinear;
  else if (variant == "nonlinear")
    s.variant = KnapsackVariant::kNonlinear;
  else if (variant == "polynomial")
    s.variant = KnapsackVariant::kPolynomial;
  else
    fail("knapsack: unknown variant '" + variant + "'");

  s.capacity = field(j, "capacity").get<std::int64_t>();
  if (j.contains("weight_tables")) {
    s.caps = int_vector(j, "caps");
    s.w = int_matrix(j, "weight_tables");
    const Matrix v = matrix(j, "value_tables");
    s.v = v;
  } else {
    const auto weights = int_vector(j, "weights");
    const auto values = double_vector(field(j, "values"), "values");
    if (weights.size() != values.size()) fail("knapsack: weights/values size mismatch");
    s.caps = j.contains("caps") ? int_vector(j, "caps")
                                : std::vector<std::int64_t>(weights.size(), 1);
    if (s.caps.size() != weights.size()) fail("knapsack: caps size mismatch");
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] < 0) fail("knapsack: negative weight for item " + std::to_string(i));
      std::vector<std::int64_t> wrow;
      std::vector<double> vrow;
      for (std::int64_t x = 0; x <= s.caps[i]; ++x) {
        wrow.push_back(weights[i] * x);
        vrow.push_back(values[i] * static_cast<double>(x));
      }
      s.w.push_back(std::move(wrow));
      s.v.push_back(std::move(vrow));
    }
  }
  if (s.variant == KnapsackVariant::kPolynomial) s.poly = int_vector(j, "poly");
  return s;
}

ShortestPathSpec parse_shortest_path(const json& j, bool route_mode) {
  ShortestPathSpec s;
  s.route_mode = route_mode;
  s.vertices = static_cast<int>(field(j, "vertices").get<std::int64_t>());
  s.source = static_cast<int>(field(j, "source").get<std::int64_t>());
  s.sink = static_cast<int>(field(j, "sink").get<std::int64_t>());
  s.steps = static_cast<int>(field(j, "steps").get<std::int64_t>());
  const json& cost = field(j, "cost");
  const bool per_step = cost.is_array() && !cost.empty() && cost[0].is_array() &&
                        !cost[0].empty() && cost[0][0].is_array();
  if (per_step) {
    for (const auto& m : cost) s.cost.push_back(edge_matrix(m, "cost"));
  } else {
    const EdgeMatrix m = edge_matrix(cost, "cost");
    for (int t = 0; t + 1 < s.steps; ++t) s.cost.push_back(m);
  }
  return s;
}

}  // namespace

ProblemSpec parse_spec(const json& j) {
  if (!j.is_object()) fail("spec must be a JSON object");
  const std::string family = field(j, "family").get<std::string>();
  ProblemSpec spec;

  if (family == "qubo") {
    spec = QuboSpec{fold_lower(matrix(j, "q"), "qubo")};
  } else if (family == "qudo") {
    spec = QudoSpec{fold_lower(matrix(j, "q"), "qudo"), int_vector(j, "dims")};
  } else if (family == "tqudo") {
    TqudoSpec s;
    s.dims = int_vector(j, "dims");
    for (const auto& t : field(j, "terms")) {
      TqudoTerm term;
      term.i = field(t, "i").get<int>();
      term.j = field(t, "j").get<int>();
      term.table = matrix(t, "table");
      if (term.i < term.j) {
        std::swap(term.i, term.j);
        Matrix flipped(term.table.empty() ? 0 : term.table[0].size());
        for (std::size_t a = 0; a < term.table.size(); ++a)
          for (std::size_t b = 0; b < term.table[a].size(); ++b) {
            flipped[b].resize(term.table.size());
            flipped[b][a] = term.table[a][b];
          }
        term.table = std::move(flipped);
      }
      s.terms.push_back(std::move(term));
    }
    spec = std::move(s);
  } else if (family == "hobo") {
    HoboSpec s;
    s.dims = int_vector(j, "dims");
    s.terms = parse_hobo_terms(j, s.dims, "hobo");
    spec = std::move(s);
  } else if (family == "sum_function") {
    spec = parse_sum_function(j);
  } else if (family == "nested") {
    NestedSpec s;
    s.dims = int_vector(j, "dims");
    s.qmin = field(j, "qmin").get<std::int64_t>();
    for (const auto& fi : field(j, "tables")) {
      std::vector<std::vector<std::int64_t>> rows;
      for (const auto& row : fi) {
        std::vector<std::int64_t> r;
        for (const auto& e : row) r.push_back(e.get<std::int64_t>());
        rows.push_back(std::move(r));
      }
      s.f.push_back(std::move(rows));
    }
    spec = std::move(s);
  } else if (family == "addition") {
    spec = AdditionSpec{field(j, "c").get<std::uint64_t>(),
                        static_cast<int>(field(j, "bits").get<std::int64_t>())};
  } else if (family == "multiplication") {
    spec = MultiplicationSpec{field(j, "c").get<std::uint64_t>(),
                              static_cast<int>(field(j, "bits_a").get<std::int64_t>()),
                              static_cast<int>(field(j, "bits_b").get<std::int64_t>())};
  } else if (family == "linear_system") {
    spec = LinearSystemSpec{int_matrix(j, "a"), int_vector(j, "b"), int_vector(j, "dims")};
  } else if (family == "single_one") {
    spec = SingleOneSpec{static_cast<int>(field(j, "n").get<std::int64_t>())};
  } else if (family == "partition") {
    spec = PartitionSpec{int_vector(j, "s")};
  } else if (family == "coloring") {
    ColoringSpec s;
    s.graph = parse_graph(j, "coloring");
    s.k = static_cast<int>(field(j, "k").get<std::int64_t>());
    s.minimize_colors = j.contains("minimize_colors") && j["minimize_colors"].get<bool>();
    if (j.contains("vertex_costs")) s.vertex_costs = matrix(j, "vertex_costs");
    spec = std::move(s);
  } else if (family == "shortest_path_cost") {
    spec = parse_shortest_path(j, false);
  } else if (family == "shortest_path_route") {
    spec = parse_shortest_path(j, true);
  } else if (family == "tsp") {
    spec = TspSpec{edge_matrix(field(j, "e"), "e")};
  } else if (family == "knapsack") {
    spec = parse_knapsack(j);
  } else if (family == "ilp") {
    IlpSpec s;
    s.c = double_vector(field(j, "c"), "c");
    s.a = int_matrix(j, "a");
    s.b = int_vector(j, "b");
    s.dims = int_vector(j, "dims");
    spec = std::move(s);
  } else if (family == "iqp") {
    IqpSpec s;
    s.q = fold_lower(matrix(j, "q"), "iqp");
    s.c = double_vector(field(j, "c"), "c");
    s.a = int_matrix(j, "a");
    s.b = int_vector(j, "b");
    s.dims = int_vector(j, "dims");
    spec = std::move(s);
  } else if (family == "ipp") {
    IppSpec s;
    s.dims = int_vector(j, "dims");
    s.terms = parse_hobo_terms(j, s.dims, "ipp");
    s.a = int_matrix(j, "a");
    s.b = int_vector(j, "b");
    spec = std::move(s);
  } else if (family == "mis") {
    spec = MisSpec{parse_graph(j, "mis")};
  } else if (family == "vertex_cover") {
    spec = VertexCoverSpec{parse_graph(j, "vertex_cover")};
  } else if (family == "dominating_set") {
    DominatingSetSpec s;
    s.graph = parse_graph(j, "dominating_set");
    s.costs = j.contains("costs")
                  ? double_vector(field(j, "costs"), "costs")
                  : std::vector<double>(static_cast<std::size_t>(s.graph.vertices), 1.0);
    spec = std::move(s);
  } else if (family == "assignment") {
    AssignmentSpec s;
    s.costs = matrix(j, "costs");
    if (j.contains("lambda")) {
      s.lambda = field(j, "lambda").get<double>();
    } else {
      double total = 0.0;
      for (const auto& row : s.costs)
        for (double c : row) total += std::abs(c);
      s.lambda = 1.0 + total;
    }
    spec = std::move(s);
  } else {
    fail("unknown family '" + family + "'");
  }

  validate_spec(spec);
  return spec;
}

ProblemSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail("invalid JSON in " + path + ": " + e.what());
  }
  return parse_spec(j);
}

namespace {

ordered_json emit_graph(const Graph& g) {
  ordered_json out;
  out["vertices"] = g.vertices;
  auto edges = ordered_json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  out["edges"] = std::move(edges);
  return out;
}

ordered_json emit_edge_matrix(const EdgeMatrix& m) {
  auto out = ordered_json::array();
  for (const auto& row : m) {
    auto r = ordered_json::array();
    for (const auto& e : row) {
      if (e)
        r.push_back(*e);
      else
        r.push_back(nullptr);
    }
    out.push_back(std::move(r));
  }
  return out;
}

ordered_json emit_hobo_terms(const std::vector<HoboTerm>& terms) {
  auto out = ordered_json::array();
  for (const HoboTerm& t : terms) {
    ordered_json jt;
    jt["vars"] = t.vars;
    if (t.table.empty())
      jt["coeff"] = t.coeff;
    else
      jt["table"] = t.table;
    out.push_back(std::move(jt));
  }
  return out;
}

}  // namespace

ordered_json emit_spec(const ProblemSpec& spec) {
  ordered_json out;
  out["family"] = family_name(spec);
  if (const auto* s = std::get_if<QuboSpec>(&spec)) {
    out["q"] = s->q;
  } else if (const auto* s = std::get_if<QudoSpec>(&spec)) {
    out["q"] = s->q;
    out["dims"] = s->dims;
  } else if (const auto* s = std::get_if<TqudoSpec>(&spec)) {
    out["dims"] = s->dims;
    auto terms = ordered_json::array();
    for (const TqudoTerm& t : s->terms)
      terms.push_back({{"i", t.i}, {"j", t.j}, {"table", t.table}});
    out["terms"] = std::move(terms);
  } else if (const auto* s = std::get_if<HoboSpec>(&spec)) {
    out["dims"] = s->dims;
    out["terms"] = emit_hobo_terms(s->terms);
  } else if (const auto* s = std::get_if<SumFunctionSpec>(&spec)) {
    out["dims"] = s->dims;
    out["g"] = s->g;
    out["f"] = {{"type", "table"}, {"zmin", s->f_zmin}, {"values", s->f}};
  } else if (const auto* s = std::get_if<NestedSpec>(&spec)) {
    out["dims"] = s->dims;
    out["qmin"] = s->qmin;
    out["tables"] = s->f;
  } else if (const auto* s = std::get_if<AdditionSpec>(&spec)) {
    out["c"] = s->c;
    out["bits"] = s->bits;
  } else if (const auto* s = std::get_if<MultiplicationSpec>(&spec)) {
    out["c"] = s->c;
    out["bits_a"] = s->bits_a;
    out["bits_b"] = s->bits_b;
  } else if (const auto* s = std::get_if<LinearSystemSpec>(&spec)) {
    out["a"] = s->a;
    out["b"] = s->b;
    out["dims"] = s->dims;
  } else if (const auto* s = std::get_if<SingleOneSpec>(&spec)) {
    out["n"] = s->n;
  } else if (const auto* s = std::get_if<PartitionSpec>(&spec)) {
    out["s"] = s->s;
  } else if (const auto* s = std::get_if<ColoringSpec>(&spec)) {
    out.update(emit_graph(s->graph));
    out["k"] = s->k;
    if (s->minimize_colors) out["minimize_colors"] = true;
    if (s->vertex_costs) out["vertex_costs"] = *s->vertex_costs;
  } else if (const auto* s = std::get_if<ShortestPathSpec>(&spec)) {
    out["vertices"] = s->vertices;
    auto per_step = ordered_json::array();
    for (const EdgeMatrix& m : s->cost) per_step.push_back(emit_edge_matrix(m));
    out["cost"] = std::move(per_step);
    out["source"] = s->source;
    out["sink"] = s->sink;
    out["steps"] = s->steps;
  } else if (const auto* s = std::get_if<TspSpec>(&spec)) {
    out["e"] = emit_edge_matrix(s->e);
  } else if (const auto* s = std::get_if<KnapsackSpec>(&spec)) {
    switch (s->variant) {
      case KnapsackVariant::kLinear: out["variant"] = "linear"; break;
      case KnapsackVariant::kNonlinear: out["variant"] = "nonlinear"; break;
      case KnapsackVariant::kPolynomial: out["variant"] = "polynomial"; break;
    }
    out["caps"] = s->caps;
    out["weight_tables"] = s->w;
    out["value_tables"] = s->v;
    out["capacity"] = s->capacity;
    if (s->variant == KnapsackVariant::kPolynomial) out["poly"] = s->poly;
  } else if (const auto* s = std::get_if<IlpSpec>(&spec)) {
    out["c"] = s->c;
    out["a"] = s->a;
    out["b"] = s->b;
    out["dims"] = s->dims;
  } else if (const auto* s = std::get_if<IqpSpec>(&spec)) {
    out["q"] = s->q;
    out["c"] = s->c;
    out["a"] = s->a;
    out["b"] = s->b;
    out["dims"] = s->dims;
  } else if (const auto* s = std::get_if<IppSpec>(&spec)) {
    out["dims"] = s->dims;
    out["terms"] = emit_hobo_terms(s->terms);
    out["a"] = s->a;
    out["b"] = s->b;
  } else if (const auto* s = std::get_if<MisSpec>(&spec)) {
    out.update(emit_graph(s->graph));
  } else if (const auto* s = std::get_if<VertexCoverSpec>(&spec)) {
    out.update(emit_graph(s->graph));
  } else if (const auto* s = std::get_if<DominatingSetSpec>(&spec)) {
    out.update(emit_graph(s->graph));
    out["costs"] = s->costs;
  } else if (const auto* s = std::get_if<AssignmentSpec>(&spec)) {
    out["costs"] = s->costs;
    out["lambda"] = s->lambda;
  }
  return out;
}

namespace {

ordered_json solution_json(const Solution& sol) {
  ordered_json out;
  out["assignment"] = sol.assignment;
  out["feasible"] = sol.feasible;
  out["margins"] = sol.margins;
  out["log_amplitude"] =
      std::isfinite(sol.log_amplitude) ? ordered_json(sol.log_amplitude) : ordered_json(nullptr);
  out["tau_used"] = sol.tau_used;
  out["escalation_converged"] = sol.escalation_converged;
  if (!sol.note.empty()) out["note"] = sol.note;
  return out;
}

ordered_json config_json(const SolverConfig& config, const Solution* sol) {
  ordered_json out;
  out["tau_final"] = sol ? sol->tau_used : (config.tau ? *config.tau : 0.0);
  out["mode"] = config.humbucker ? "phase" : "plus";
  out["escalate"] = config.escalate;
  if (config.layer_limit) out["layer_limit"] = *config.layer_limit;
  out["tolerance"] = config.tolerance;
  return out;
}

// Path counts per total cost, read straight off the histogram leg.
ordered_json network_histogram(const ProblemSpec& spec) {
  BuildContext ctx;
  const BuiltProblem built = build_network(spec, ctx);
  TraceOptions options;
  const TraceResult trace = half_partial_trace(built.net, built.layout, 0, options);
  ordered_json hist = ordered_json::object();
  if (trace.degenerate) return hist;
  const double scale = std::exp(trace.log_scale);
  for (std::size_t c = 0; c < trace.amplitudes.size(); ++c) {
    const double count = trace.amplitudes[c].real() * scale;
    if (count > 0.5) hist[std::to_string(c)] = std::llround(count);
  }
  return hist;
}

}  // namespace

RunOutcome run(const RunOptions& options) {
  RunOutcome out;
  std::ostringstream log;
  try {
    const ProblemSpec spec = parse_spec_file(options.spec_path);
    ordered_json report;
    report["family"] = family_name(spec);
    report["variables"] = variable_dims(spec);
    report["spec"] = emit_spec(spec);

    if (options.plan_debug) {
      BuildContext ctx;
      ctx.tau = options.config.tau.value_or(default_tau(spec));
      ctx.layer_limit = options.config.layer_limit;
      log << build_network(spec, ctx).net.export_text();
    }

    if (options.command == "solve" || options.command == "bench") {
      const auto t0 = std::chrono::steady_clock::now();
      const Solution sol = solve(spec, options.config);
      const auto t1 = std::chrono::steady_clock::now();
      report["config"] = config_json(options.config, &sol);
      report["solution"] = solution_json(sol);
      if (sol.feasible) {
        const auto pe = oracle::verify(spec, sol.assignment);
        report["cost"] = pe.cost;
      }
      if (const auto* sp = std::get_if<ShortestPathSpec>(&spec); sp && !sp->route_mode)
        report["path_cost_histogram"] = network_histogram(spec);
      report["timings_ms"] = {
          {"total", std::chrono::duration<double, std::milli>(t1 - t0).count()},
          {"steps", sol.step_ms}};

      if (options.command == "solve" && options.check) {
        if (oracle::state_space(spec) <= options.oracle_budget) {
          const auto ref = oracle::enumerate(spec, options.oracle_budget);
          ordered_json cmp;
          cmp["oracle_feasible"] = ref.has_optimum;
          if (ref.optimization && ref.has_optimum) cmp["oracle_best_cost"] = ref.best_cost;
          bool match = true;
          if (sol.feasible != ref.has_optimum) match = false;
          if (sol.feasible && ref.optimization) {
            const auto pe = oracle::verify(spec, sol.assignment);
            if (std::abs(pe.cost - ref.best_cost) > 1e-9) match = false;
          }
          cmp["match"] = match;
          report["oracle_comparison"] = std::move(cmp);
          if (!match) {
            out.report = std::move(report);
            out.exit_code = 1;
            out.log = log.str() + "solver/oracle mismatch\n";
            return out;
          }
        } else {
          report["oracle_comparison"] = "skipped_budget";
        }
      }
      out.exit_code = sol.feasible ? 0 : 2;
      out.report = std::move(report);
    } else if (options.command == "count") {
      const double raw = count_solutions_value(spec);
      const std::int64_t count = std::llround(raw);
      report["count"] = count;
      report["count_raw"] = raw;
      out.exit_code = count > 0 ? 0 : 2;
      out.report = std::move(report);
    } else if (options.command == "verify") {
      if (!options.assignment) fail("verify needs --assignment");
      const auto pe = oracle::verify(spec, *options.assignment);
      report["assignment"] = *options.assignment;
      report["feasible"] = pe.feasible;
      report["cost"] = pe.cost;
      out.exit_code = pe.feasible ? 0 : 2;
      out.report = std::move(report);
    } else if (options.command == "oracle") {
      const auto ref = oracle::enumerate(spec, options.oracle_budget);
      report["evaluations"] = ref.evaluations;
      report["feasible_count"] = ref.feasible_count;
      if (ref.optimization) {
        if (ref.has_optimum) {
          report["best_cost"] = ref.best_cost;
          auto args = ordered_json::array();
          for (std::size_t i = 0; i < ref.best_assignments.size() && i < 20; ++i)
            args.push_back(ref.best_assignments[i]);
          report["best_assignments"] = std::move(args);
        }
      } else {
        auto feas = ordered_json::array();
        for (std::size_t i = 0; i < ref.feasible.size() && i < 20; ++i)
          feas.push_back(ref.feasible[i]);
        report["feasible_sample"] = std::move(feas);
      }
      if (!ref.histogram.empty()) {
        ordered_json hist = ordered_json::object();
        for (const auto& [c, n] : ref.histogram) hist[std::to_string(c)] = n;
        report["path_cost_histogram"] = std::move(hist);
      }
      out.exit_code = ref.has_optimum ? 0 : 2;
      out.report = std::move(report);
    } else {
      fail("unknown command '" + options.command + "'");
    }
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.report = ordered_json{{"error", e.what()}};
    out.log = log.str() + "error: " + e.what() + "\n";
    return out;
  }
  out.log = log.str();
  return out;
}

}  // namespace tensolve::io
