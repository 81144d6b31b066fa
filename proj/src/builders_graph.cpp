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

// Graph and route families: per-vertex wires with edge filters, and the
// step-chain networks for paths and tours.

#include <algorithm>
#include <cmath>

#include "builders_internal.hpp"

namespace tensolve {

using detail::cap_plus;
using detail::diag_amp;
using detail::extend_wire;
using detail::finish_layout;
using detail::start_wire;
using detail::var_label;
using detail::Wire;

namespace {

// Per-vertex wires: a diagonal weight, U-filters receiving lower-numbered
// neighbours, delta copies feeding higher-numbered ones.
BuiltProblem build_vertex_filter_net(
    const Graph& graph, std::int64_t dim,
    const std::function<std::optional<Amplitude>(int, std::int64_t)>& weight,
    const std::function<bool(std::int64_t, std::int64_t)>& edge_ok,
    bool unit_amplitudes) {
  const auto n = static_cast<std::size_t>(graph.vertices);
  const std::vector<std::int64_t> dims(n, dim);
  TensorNetwork net;
  std::vector<Wire> wires;
  for (std::size_t v = 0; v < n; ++v)
    wires.push_back(start_wire(net, var_label(v),
                               diag_amp(dim, [&](std::int64_t c) { return weight(static_cast<int>(v), c); }),
                               0, 1));

  // U filter: (recv, wire in, wire out), alive iff edge_ok(recv, own).
  SparseTensor u({dim, dim, dim});
  for (std::int64_t cu = 0; cu < dim; ++cu)
    for (std::int64_t cv = 0; cv < dim; ++cv)
      if (edge_ok(cu, cv)) u.add({cu, cv, cv}, 1.0);
  u.canonicalize();

  for (const auto& [a, b] : graph.edges) {
    const NodeId copy = extend_wire(net, wires[static_cast<std::size_t>(a)],
                                    make_delta(3, dim), 0, 1);
    const NodeId filt = extend_wire(net, wires[static_cast<std::size_t>(b)], u, 1, 2);
    net.add_bond({copy, 2}, {filt, 0});
  }

  for (std::size_t v = 0; v < n; ++v) cap_plus(net, wires[v], dim);
  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = unit_amplitudes;
  return detail::finalize_build(std::move(out));
}

}  // namespace

BuiltProblem build_coloring(const ColoringSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  const bool weighted = spec.minimize_colors || spec.vertex_costs.has_value();
  return build_vertex_filter_net(
      spec.graph, spec.k,
      [&](int v, std::int64_t c) -> std::optional<Amplitude> {
        if (spec.vertex_costs)
          return Amplitude{
              std::exp(-tau * (*spec.vertex_costs)[static_cast<std::size_t>(v)]
                                                  [static_cast<std::size_t>(c)]),
              0.0};
        if (spec.minimize_colors)
          return Amplitude{std::exp(-tau * static_cast<double>(c)), 0.0};
        return Amplitude{1.0, 0.0};
      },
      [](std::int64_t cu, std::int64_t cv) { return cu != cv; },
      /*unit_amplitudes=*/!weighted);
}

BuiltProblem build_mis(const MisSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  return build_vertex_filter_net(
      spec.graph, 2,
      [tau](int, std::int64_t b) -> std::optional<Amplitude> {
        // maximize the selected count
        return Amplitude{std::exp(tau * static_cast<double>(b)), 0.0};
      },
      [](std::int64_t u, std::int64_t v) { return !(u == 1 && v == 1); },
      /*unit_amplitudes=*/false);
}

BuiltProblem build_vertex_cover(const VertexCoverSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  return build_vertex_filter_net(
      spec.graph, 2,
      [tau](int, std::int64_t b) -> std::optional<Amplitude> {
        return Amplitude{std::exp(-tau * static_cast<double>(b)), 0.0};
      },
      [](std::int64_t u, std::int64_t v) { return u == 1 || v == 1; },
      /*unit_amplitudes=*/false);
}

BuiltProblem build_dominating_set(const DominatingSetSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  const auto n = static_cast<std::size_t>(spec.graph.vertices);
  const std::vector<std::int64_t> dims(n, 2);
  const auto adj = spec.graph.adjacency();

  TensorNetwork net;
  std::vector<Wire> wires;
  std::vector<LegRef> or_state(n);  // running "covered" flag per vertex

  for (std::size_t v = 0; v < n; ++v) {
    // (value in, wire out, covered-by-self out)
    SparseTensor t({2, 2, 2});
    for (std::int64_t b = 0; b < 2; ++b)
      t.add({b, b, b}, std::exp(-tau * spec.costs[v] * static_cast<double>(b)));
    wires.push_back(start_wire(net, var_label(v), std::move(t.canonicalize()), 0, 1));
    or_state[v] = {wires[v].tail.node, 2};
  }

  // Every neighbour's value ORs into the vertex's covered flag.
  SparseTensor orr({2, 2, 2});  // (state in, recv, state out)
  for (std::int64_t s = 0; s < 2; ++s)
    for (std::int64_t j = 0; j < 2; ++j) orr.add({s, j, std::min<std::int64_t>(s + j, 1)}, 1.0);
  orr.canonicalize();

  for (std::size_t v = 0; v < n; ++v) {
    for (int u : adj[v]) {
      const NodeId copy = extend_wire(net, wires[static_cast<std::size_t>(u)],
                                      make_delta(3, 2), 0, 1);
      const NodeId gate = net.add_node(orr);
      net.add_bond(or_state[v], {gate, 0});
      net.add_bond({copy, 2}, {gate, 1});
      or_state[v] = {gate, 2};
    }
    // Domination filter: the final flag must be 1.
    const NodeId must = net.add_node(make_projection(2, 1));
    net.add_bond(or_state[v], {must, 0});
  }

  for (std::size_t v = 0; v < n; ++v) cap_plus(net, wires[v], 2);
  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = false;
  return detail::finalize_build(std::move(out));
}

BuiltProblem build_shortest_path(const ShortestPathSpec& spec, const BuildContext& ctx) {
  const auto v_count = static_cast<std::int64_t>(spec.vertices);
  const int steps = spec.steps;

  // Edge lookup with forced zero-cost self-loops in cost mode.
  auto edge = [&](int t, std::int64_t u, std::int64_t w) -> std::optional<double> {
    if (!spec.route_mode && u == w) return 0.0;
    return spec.cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(u)]
                    [static_cast<std::size_t>(w)];
  };

  TensorNetwork net;
  BuiltProblem out;

  if (!spec.route_mode) {
    // Cost accumulator chain; everything except the histogram is summed out.
    std::vector<std::int64_t> cum(static_cast<std::size_t>(steps), 0);
    for (int t = 1; t < steps; ++t) {
      std::int64_t m = 0;
      for (std::int64_t u = 0; u < v_count; ++u)
        for (std::int64_t w = 0; w < v_count; ++w)
          if (const auto e = edge(t - 1, u, w))
            m = std::max(m, static_cast<std::int64_t>(*e));
      cum[static_cast<std::size_t>(t)] = cum[static_cast<std::size_t>(t - 1)] + m;
    }

    LegRef val, cost;
    for (int t = 1; t < steps; ++t) {
      const std::int64_t cext_in = cum[static_cast<std::size_t>(t - 1)] + 1;
      const std::int64_t cext_out = cum[static_cast<std::size_t>(t)] + 1;
      const bool last = (t == steps - 1);
      if (t == 1 && last) {
        SparseTensor tns({cext_out});
        if (const auto e = edge(0, spec.source, spec.sink))
          tns.add({static_cast<std::int64_t>(*e)}, 1.0);
        const NodeId id = net.add_node(std::move(tns.canonicalize()));
        net.mark_open("cost", {id, 0});
      } else if (t == 1) {
        // (own value consumed, value out, cost out)
        SparseTensor tns({v_count, v_count, cext_out});
        for (std::int64_t w = 0; w < v_count; ++w)
          if (const auto e = edge(0, spec.source, w))
            tns.add({w, w, static_cast<std::int64_t>(*e)}, 1.0);
        const NodeId id = net.add_node(std::move(tns.canonicalize()));
        const NodeId plus = net.add_node(make_plus(v_count));
        net.add_bond({id, 0}, {plus, 0});
        val = {id, 1};
        cost = {id, 2};
      } else if (!last) {
        // (prev value, cost in, own value consumed, value out, cost out)
        SparseTensor tns({v_count, cext_in, v_count, v_count, cext_out});
        for (std::int64_t u = 0; u < v_count; ++u)
          for (std::int64_t w = 0; w < v_count; ++w) {
            const auto e = edge(t - 1, u, w);
            if (!e) continue;
            for (std::int64_t s = 0; s < cext_in; ++s)
              tns.add({u, s, w, w, s + static_cast<std::int64_t>(*e)}, 1.0);
          }
        const NodeId id = net.add_node(std::move(tns.canonicalize()));
        net.add_bond(val, {id, 0});
        net.add_bond(cost, {id, 1});
        const NodeId plus = net.add_node(make_plus(v_count));
        net.add_bond({id, 2}, {plus, 0});
        val = {id, 3};
        cost = {id, 4};
      } else {
        // (prev value, cost in, cost out); the sink is imposed.
        SparseTensor tns({v_count, cext_in, cext_out});
        for (std::int64_t u = 0; u < v_count; ++u) {
          const auto e = edge(t - 1, u, spec.sink);
          if (!e) continue;
          for (std::int64_t s = 0; s < cext_in; ++s)
            tns.add({u, s, s + static_cast<std::int64_t>(*e)}, 1.0);
        }
        const NodeId id = net.add_node(std::move(tns.canonicalize()));
        net.add_bond(val, {id, 0});
        net.add_bond(cost, {id, 1});
        net.mark_open("cost", {id, 2});
      }
    }
    out.layout.variables.push_back(
        {"cost", cum[static_cast<std::size_t>(steps - 1)] + 1,
         VariableLayout::Extract::kLowestNonzero});
    out.unit_amplitudes = true;
  } else {
    const double tau = ctx.tau;
    std::vector<Wire> wires;
    const std::vector<std::int64_t> dims(static_cast<std::size_t>(std::max(0, steps - 2)),
                                         v_count);
    LegRef val;
    for (int t = 1; t < steps; ++t) {
      const bool last = (t == steps - 1);
      if (t == 1 && last) {
        SparseTensor tns(std::vector<std::int64_t>{});
        if (const auto e = edge(0, spec.source, spec.sink))
          tns.add(std::initializer_list<std::int64_t>{}, std::exp(-tau * *e));
        net.add_node(std::move(tns.canonicalize()));
      } else if (t == 1) {
        // (own value = variable leg, value out)
        SparseTensor tns({v_count, v_count});
        for (std::int64_t w = 0; w < v_count; ++w)
          if (const auto e = edge(0, spec.source, w)) tns.add({w, w}, std::exp(-tau * *e));
        wires.push_back(start_wire(net, var_label(0), std::move(tns.canonicalize()), 0, 1));
        val = wires.back().tail;
      } else if (!last) {
        // (own value, prev value, value out)
        SparseTensor tns({v_count, v_count, v_count});
        for (std::int64_t u = 0; u < v_count; ++u)
          for (std::int64_t w = 0; w < v_count; ++w)
            if (const auto e = edge(t - 1, u, w)) tns.add({w, u, w}, std::exp(-tau * *e));
        wires.push_back(start_wire(net, var_label(wires.size()), std::move(tns.canonicalize()), 0, 2));
        net.add_bond(val, {wires.back().tail.node, 1});
        val = wires.back().tail;
      } else {
        // (prev value): the sink is imposed.
        SparseTensor tns({v_count});
        for (std::int64_t u = 0; u < v_count; ++u)
          if (const auto e = edge(t - 1, u, spec.sink)) tns.add({u}, std::exp(-tau * *e));
        const NodeId id = net.add_node(std::move(tns.canonicalize()));
        net.add_bond(val, {id, 0});
      }
    }
    out.layout = finish_layout(net, wires, dims);
    out.unit_amplitudes = false;
  }

  out.net = std::move(net);
  return detail::finalize_build(std::move(out));
}

BuiltProblem build_tsp(const TspSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  const auto v_count = static_cast<std::int64_t>(spec.e.size());
  const std::int64_t dim = v_count - 1;  // positions hold vertices 0..V-2
  const auto n_vars = static_cast<std::size_t>(v_count - 1);
  const std::vector<std::int64_t> dims(n_vars, dim);

  auto edge = [&](std::int64_t u, std::int64_t w) {
    return spec.e[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)];
  };

  TensorNetwork net;
  std::vector<Wire> wires;
  LegRef val;
  for (std::size_t t = 0; t < n_vars; ++t) {
    const bool last = (t + 1 == n_vars);
    if (t == 0) {
      // (own value, wire out, value out): close the loop from vertex V-1.
      SparseTensor tns({dim, dim, dim});
      for (std::int64_t w = 0; w < dim; ++w)
        if (const auto e = edge(v_count - 1, w)) tns.add({w, w, w}, std::exp(-tau * *e));
      wires.push_back(start_wire(net, var_label(0), std::move(tns.canonicalize()), 0, 1));
      val = {wires[0].tail.node, 2};
    } else if (!last) {
      SparseTensor tns({dim, dim, dim, dim});  // (own, prev, wire out, value out)
      for (std::int64_t u = 0; u < dim; ++u)
        for (std::int64_t w = 0; w < dim; ++w)
          if (const auto e = edge(u, w)) tns.add({w, u, w, w}, std::exp(-tau * *e));
      wires.push_back(start_wire(net, var_label(t), std::move(tns.canonicalize()), 0, 2));
      net.add_bond(val, {wires[t].tail.node, 1});
      val = {wires[t].tail.node, 3};
    } else {
      SparseTensor tns({dim, dim, dim});  // (own, prev, wire out) with return edge
      for (std::int64_t u = 0; u < dim; ++u)
        for (std::int64_t w = 0; w < dim; ++w) {
          const auto e = edge(u, w);
          const auto back = edge(w, v_count - 1);
          if (e && back) tns.add({w, u, w}, std::exp(-tau * (*e + *back)));
        }
      wires.push_back(start_wire(net, var_label(t), std::move(tns.canonicalize()), 0, 2));
      net.add_bond(val, {wires[t].tail.node, 1});
    }
  }

  // Repetition filter layers: vertex k appears exactly once. Under a layer
  // limit only the first L layers for still-unvisited vertices are kept; the
  // removed constraints move into masked initializations.
  std::vector<std::int64_t> layer_vertices;
  for (std::int64_t k = 0; k + 2 <= v_count - 1; ++k) layer_vertices.push_back(k);

  BuiltProblem out;
  if (ctx.layer_limit) {
    std::vector<char> visited(static_cast<std::size_t>(dim), 0);
    for (std::int64_t v : ctx.fixed_prefix) visited[static_cast<std::size_t>(v)] = 1;
    std::vector<std::int64_t> kept;
    for (std::int64_t k : layer_vertices) {
      if (static_cast<int>(kept.size()) >= *ctx.layer_limit) break;
      if (!visited[static_cast<std::size_t>(k)]) kept.push_back(k);
    }
    layer_vertices = kept;

    // Masked superpositions exclude already-visited vertices.
    std::vector<char> allowed(static_cast<std::size_t>(dim), 1);
    for (std::int64_t v : ctx.fixed_prefix) allowed[static_cast<std::size_t>(v)] = 0;
    SparseTensor mask({dim});
    for (std::int64_t v = 0; v < dim; ++v)
      if (allowed[static_cast<std::size_t>(v)]) mask.add({v}, 1.0);
    mask.canonicalize();
    for (std::size_t k = ctx.fixed_prefix.size(); k < n_vars; ++k) {
      out.boundary_overrides.emplace(k, mask);
      out.allowed_values.emplace(k, allowed);
    }
  }

  for (std::int64_t k : layer_vertices) {
    std::vector<SparseTensor> layer =
        build_repetition_layer(static_cast<int>(n_vars), dim, k, 1);
    LegRef count;
    for (std::size_t t = 0; t < n_vars; ++t) {
      SparseTensor tens = std::move(layer[t]);
      if (n_vars == 1) {
        extend_wire(net, wires[0], std::move(tens), 0, 1);
      } else if (t == 0) {
        const NodeId id = extend_wire(net, wires[0], std::move(tens), 0, 1);
        count = {id, 2};
      } else if (t + 1 < n_vars) {
        const NodeId id = extend_wire(net, wires[t], std::move(tens), 0, 2);
        net.add_bond(count, {id, 1});
        count = {id, 3};
      } else {
        const NodeId id = extend_wire(net, wires[t], std::move(tens), 0, 2);
        net.add_bond(count, {id, 1});
      }
    }
  }

  for (std::size_t t = 0; t < n_vars; ++t) cap_plus(net, wires[t], dim);
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = false;
  return detail::finalize_build(std::move(out));
}

}  // namespace tensolve
