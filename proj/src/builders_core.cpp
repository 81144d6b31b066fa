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

// Circuit tensorization: every builder lowers one problem family to a wired
// TensorNetwork whose open legs are the problem variables. Constraint logic
// lives in 0/1 filter entries; costs enter as imaginary-time weights
// e^{-tau * cost} baked into the tensors.

#include <algorithm>
#include <cmath>
#include <map>

#include "builders_internal.hpp"

namespace tensolve {

namespace detail {

SparseTensor diag_amp(std::int64_t dim,
                      const std::function<std::optional<Amplitude>(std::int64_t)>& amp) {
  SparseTensor t({dim, dim});
  for (std::int64_t v = 0; v < dim; ++v)
    if (const auto a = amp(v)) t.add({v, v}, *a);
  return t.canonicalize();
}

std::string var_label(std::size_t k) { return "x" + std::to_string(k); }

NodeId extend_wire(TensorNetwork& net, Wire& wire, SparseTensor t, int in, int out) {
  const NodeId id = net.add_node(std::move(t));
  net.add_bond(wire.tail, {id, in});
  wire.tail = {id, out};
  return id;
}

void cap_plus(TensorNetwork& net, Wire& wire, std::int64_t dim) {
  const NodeId id = net.add_node(make_plus(dim));
  net.add_bond(wire.tail, {id, 0});
}

Wire start_wire(TensorNetwork& net, const std::string& label, SparseTensor first,
                int in, int out) {
  const NodeId id = net.add_node(std::move(first));
  return Wire{label, {id, in}, {id, out}};
}

VariableLayout finish_layout(TensorNetwork& net, std::vector<Wire>& wires,
                             const std::vector<std::int64_t>& dims) {
  VariableLayout layout;
  for (std::size_t k = 0; k < wires.size(); ++k) {
    net.mark_open(wires[k].label, wires[k].head);
    layout.variables.push_back({wires[k].label, dims[k], VariableLayout::Extract::kArgMax});
  }
  return layout;
}

BuiltProblem finalize_build(BuiltProblem out) {
  out.net.validate();
  for (NodeId id : out.net.node_ids()) {
    if (out.net.node(id).nnz() == 0) continue;  // genuinely dead filters stay
    auto [normalized, log] = normalize_max(out.net.node(id));
    out.net.mutable_node(id) = std::move(normalized);
    out.log_offset += log;
  }
  return out;
}

std::vector<Wire> emit_interaction_chains(
    TensorNetwork& net, const std::vector<std::int64_t>& dims,
    const std::vector<InteractionTerm>& terms,
    const std::function<Amplitude(std::size_t, std::int64_t)>& diag) {
  std::vector<Wire> wires;
  wires.reserve(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a) {
    SparseTensor d = diag_amp(dims[a], [&](std::int64_t v) -> std::optional<Amplitude> {
      return diag(a, v);
    });
    wires.push_back(start_wire(net, var_label(a), std::move(d), 0, 1));
  }

  for (const InteractionTerm& term : terms) {
    const std::size_t m = term.vars.size();
    const auto host = static_cast<std::size_t>(term.vars[0]);
    // Evolution tensor on the host wire: (wire in, recv_1..recv_{m-1}, wire out).
    std::vector<std::int64_t> tdims;
    for (int v : term.vars) tdims.push_back(dims[static_cast<std::size_t>(v)]);
    tdims.push_back(dims[host]);
    SparseTensor s(tdims);
    std::vector<std::int64_t> vals(m, 0), idx(m + 1, 0);
    while (true) {
      for (std::size_t i = 0; i < m; ++i) idx[i] = vals[i];
      idx[m] = vals[0];
      s.add(idx, term.amp(vals));
      std::size_t pos = m;
      while (pos > 0) {
        --pos;
        if (++vals[pos] < dims[static_cast<std::size_t>(term.vars[pos])]) break;
        vals[pos] = 0;
        if (pos == 0) goto done;
      }
    }
  done:
    s.canonicalize();
    const NodeId s_id = extend_wire(net, wires[host], std::move(s), 0, static_cast<int>(m));
    for (std::size_t k = 1; k < m; ++k) {
      const auto recv = static_cast<std::size_t>(term.vars[k]);
      const NodeId copy = extend_wire(net, wires[recv], make_delta(3, dims[recv]), 0, 1);
      net.add_bond({copy, 2}, {s_id, static_cast<int>(k)});
    }
  }
  return wires;
}

}  // namespace detail

using detail::cap_plus;
using detail::diag_amp;
using detail::emit_interaction_chains;
using detail::extend_wire;
using detail::finish_layout;
using detail::start_wire;
using detail::var_label;
using detail::InteractionTerm;
using detail::Wire;

namespace {

BuiltProblem finish_plus_capped(TensorNetwork net, std::vector<Wire> wires,
                                const std::vector<std::int64_t>& dims,
                                bool unit_amplitudes) {
  for (std::size_t k = 0; k < wires.size(); ++k) cap_plus(net, wires[k], dims[k]);
  VariableLayout layout = finish_layout(net, wires, dims);
  BuiltProblem out;
  out.net = std::move(net);
  out.layout = std::move(layout);
  out.unit_amplitudes = unit_amplitudes;
  return detail::finalize_build(std::move(out));
}

BuiltProblem build_pairwise(const std::vector<std::int64_t>& dims,
                            const std::map<std::pair<int, int>, Matrix>& coupling,
                            const std::vector<std::vector<double>>& diag_cost,
                            double tau) {
  TensorNetwork net;
  std::vector<InteractionTerm> terms;
  for (const auto& [pair, table] : coupling) {
    const auto& [i, j] = pair;
    terms.push_back(InteractionTerm{
        {i, j}, [table, tau](const std::vector<std::int64_t>& v) -> Amplitude {
          return std::exp(-tau * table[static_cast<std::size_t>(v[0])]
                                      [static_cast<std::size_t>(v[1])]);
        }});
  }
  std::vector<Wire> wires = emit_interaction_chains(
      net, dims, terms, [&](std::size_t a, std::int64_t v) -> Amplitude {
        return std::exp(-tau * diag_cost[a][static_cast<std::size_t>(v)]);
      });
  return finish_plus_capped(std::move(net), std::move(wires), dims, false);
}

}  // namespace

BuiltProblem build_quadratic(const QuboSpec& spec, const BuildContext& ctx) {
  QudoSpec d{spec.q, std::vector<std::int64_t>(spec.q.size(), 2)};
  return build_quadratic(d, ctx);
}

BuiltProblem build_quadratic(const QudoSpec& spec, const BuildContext& ctx) {
  const std::size_t n = spec.q.size();
  std::map<std::pair<int, int>, Matrix> coupling;
  std::vector<std::vector<double>> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i].resize(static_cast<std::size_t>(spec.dims[i]));
    for (std::int64_t v = 0; v < spec.dims[i]; ++v)
      diag[i][static_cast<std::size_t>(v)] =
          spec.q[i][i] * static_cast<double>(v) * static_cast<double>(v);
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.q[i][j] == 0.0) continue;  // zero couplings are omitted
      Matrix table(static_cast<std::size_t>(spec.dims[i]),
                   std::vector<double>(static_cast<std::size_t>(spec.dims[j])));
      for (std::int64_t vi = 0; vi < spec.dims[i]; ++vi)
        for (std::int64_t vj = 0; vj < spec.dims[j]; ++vj)
          table[static_cast<std::size_t>(vi)][static_cast<std::size_t>(vj)] =
              spec.q[i][j] * static_cast<double>(vi) * static_cast<double>(vj);
      coupling[{static_cast<int>(i), static_cast<int>(j)}] = std::move(table);
    }
  }
  return build_pairwise(spec.dims, coupling, diag, ctx.tau);
}

BuiltProblem build_quadratic(const TqudoSpec& spec, const BuildContext& ctx) {
  const std::size_t n = spec.dims.size();
  std::map<std::pair<int, int>, Matrix> coupling;
  std::vector<std::vector<double>> diag(n);
  for (std::size_t i = 0; i < n; ++i)
    diag[i].assign(static_cast<std::size_t>(spec.dims[i]), 0.0);
  for (const TqudoTerm& term : spec.terms) {
    if (term.i == term.j) {
      for (std::int64_t v = 0; v < spec.dims[static_cast<std::size_t>(term.i)]; ++v)
        diag[static_cast<std::size_t>(term.i)][static_cast<std::size_t>(v)] +=
            term.table[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)];
      continue;
    }
    auto& table = coupling[{term.i, term.j}];
    if (table.empty())
      table.assign(static_cast<std::size_t>(spec.dims[static_cast<std::size_t>(term.i)]),
                   std::vector<double>(
                       static_cast<std::size_t>(spec.dims[static_cast<std::size_t>(term.j)]),
                       0.0));
    for (std::size_t a = 0; a < table.size(); ++a)
      for (std::size_t b = 0; b < table[a].size(); ++b) table[a][b] += term.table[a][b];
  }
  return build_pairwise(spec.dims, coupling, diag, ctx.tau);
}

BuiltProblem build_hobo(const HoboSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  TensorNetwork net;
  std::vector<std::vector<double>> diag(spec.dims.size());
  for (std::size_t i = 0; i < spec.dims.size(); ++i)
    diag[i].assign(static_cast<std::size_t>(spec.dims[i]), 0.0);

  std::vector<InteractionTerm> terms;
  for (const HoboTerm& term : spec.terms) {
    if (term.vars.size() == 1) {
      auto& row = diag[static_cast<std::size_t>(term.vars[0])];
      for (std::size_t v = 0; v < row.size(); ++v)
        row[v] += term.table.empty() ? term.coeff * static_cast<double>(v)
                                     : term.table[v];
      continue;
    }
    if (term.table.empty() && term.coeff == 0.0) continue;
    const std::vector<int> vars = term.vars;
    std::vector<std::int64_t> vdims;
    for (int v : vars) vdims.push_back(spec.dims[static_cast<std::size_t>(v)]);
    if (term.table.empty()) {
      const double coeff = term.coeff;
      terms.push_back(InteractionTerm{
          vars, [coeff, tau](const std::vector<std::int64_t>& v) -> Amplitude {
            double prod = coeff;
            for (std::int64_t x : v) prod *= static_cast<double>(x);
            return std::exp(-tau * prod);
          }});
    } else {
      const std::vector<double> table = term.table;
      terms.push_back(InteractionTerm{
          vars, [table, vdims, tau](const std::vector<std::int64_t>& v) -> Amplitude {
            std::size_t key = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
              key = key * static_cast<std::size_t>(vdims[i]) + static_cast<std::size_t>(v[i]);
            return std::exp(-tau * table[key]);
          }});
    }
  }

  std::vector<Wire> wires = emit_interaction_chains(
      net, spec.dims, terms, [&](std::size_t a, std::int64_t v) -> Amplitude {
        return std::exp(-tau * diag[a][static_cast<std::size_t>(v)]);
      });
  return finish_plus_capped(std::move(net), std::move(wires), spec.dims, false);
}

namespace {

// Shared SUM-chain shape: signals carry shifted partial sums of integer
// summands g, with per-position extents from prefix minima/maxima; the last
// tensor applies `last(value, total)`.
BuiltProblem build_sum_chain(
    const std::vector<std::int64_t>& dims, const IntMatrix& g,
    const std::function<std::optional<Amplitude>(std::int64_t, std::int64_t)>& last,
    bool unit_amplitudes) {
  const std::size_t n = dims.size();
  TensorNetwork net;
  std::vector<Wire> wires;

  if (n == 1) {
    wires.push_back(start_wire(
        net, var_label(0),
        diag_amp(dims[0], [&](std::int64_t v) { return last(v, g[0][static_cast<std::size_t>(v)]); }),
        0, 1));
    return finish_plus_capped(std::move(net), std::move(wires), dims, unit_amplitudes);
  }

  // smin/smax[m]: range of the partial sum after m summands.
  std::vector<std::int64_t> smin(n + 1, 0), smax(n + 1, 0);
  for (std::size_t m = 0; m < n; ++m) {
    const auto [lo, hi] = std::minmax_element(g[m].begin(), g[m].end());
    smin[m + 1] = smin[m] + *lo;
    smax[m + 1] = smax[m] + *hi;
  }
  auto extent = [&](std::size_t m) { return smax[m] - smin[m] + 1; };

  LegRef sig;
  for (std::size_t m = 0; m < n; ++m) {
    if (m == 0) {
      SparseTensor t({dims[0], dims[0], extent(1)});
      for (std::int64_t v = 0; v < dims[0]; ++v)
        t.add({v, v, g[0][static_cast<std::size_t>(v)] - smin[1]}, 1.0);
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(0), std::move(t), 0, 1));
      sig = {wires[0].tail.node, 2};
    } else if (m + 1 < n) {
      SparseTensor t({dims[m], extent(m), dims[m], extent(m + 1)});
      for (std::int64_t v = 0; v < dims[m]; ++v)
        for (std::int64_t s = 0; s < extent(m); ++s)
          t.add({v, s, v, s + smin[m] + g[m][static_cast<std::size_t>(v)] - smin[m + 1]},
                1.0);
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(m), std::move(t), 0, 2));
      net.add_bond(sig, {wires[m].tail.node, 1});
      sig = {wires[m].tail.node, 3};
    } else {
      SparseTensor t({dims[m], extent(m), dims[m]});
      for (std::int64_t v = 0; v < dims[m]; ++v)
        for (std::int64_t s = 0; s < extent(m); ++s)
          if (const auto a = last(v, s + smin[m] + g[m][static_cast<std::size_t>(v)]))
            t.add({v, s, v}, *a);
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(m), std::move(t), 0, 2));
      net.add_bond(sig, {wires[m].tail.node, 1});
    }
  }
  return finish_plus_capped(std::move(net), std::move(wires), dims, unit_amplitudes);
}

}  // namespace

BuiltProblem build_sum_function(const SumFunctionSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  return build_sum_chain(
      spec.dims, spec.g,
      [&spec, tau](std::int64_t, std::int64_t total) -> std::optional<Amplitude> {
        return Amplitude{std::exp(-tau * spec.f[static_cast<std::size_t>(total - spec.f_zmin)]), 0.0};
      },
      false);
}

BuiltProblem build_partition(const PartitionSpec& spec, const BuildContext&) {
  IntMatrix g(spec.s.size());
  for (std::size_t i = 0; i < spec.s.size(); ++i) g[i] = {spec.s[i], -spec.s[i]};
  return build_sum_chain(
      std::vector<std::int64_t>(spec.s.size(), 2), g,
      [](std::int64_t, std::int64_t total) -> std::optional<Amplitude> {
        if (total == 0) return Amplitude{1.0, 0.0};
        return std::nullopt;
      },
      true);
}

BuiltProblem build_nested(const NestedSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  const std::size_t n = spec.dims.size();
  const auto extent = static_cast<std::int64_t>(spec.f[0][0].size());
  TensorNetwork net;
  std::vector<Wire> wires;

  if (n == 1) {
    wires.push_back(start_wire(
        net, var_label(0), diag_amp(spec.dims[0], [&](std::int64_t v) -> std::optional<Amplitude> {
          const std::int64_t q0 =
              spec.f[0][static_cast<std::size_t>(v)][static_cast<std::size_t>(-spec.qmin)];
          return Amplitude{std::exp(-tau * static_cast<double>(q0)), 0.0};
        }),
        0, 1));
    return finish_plus_capped(std::move(net), std::move(wires), spec.dims, false);
  }

  LegRef sig;
  for (std::size_t m = 0; m < n; ++m) {
    auto fval = [&](std::int64_t v, std::int64_t q) {
      return spec.f[m][static_cast<std::size_t>(v)][static_cast<std::size_t>(q - spec.qmin)];
    };
    if (m == 0) {
      SparseTensor t({spec.dims[0], spec.dims[0], extent});
      for (std::int64_t v = 0; v < spec.dims[0]; ++v) {
        const std::int64_t next = fval(v, 0);
        if (next < spec.qmin || next >= spec.qmin + extent) continue;
        t.add({v, v, next - spec.qmin}, 1.0);
      }
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(0), std::move(t), 0, 1));
      sig = {wires[0].tail.node, 2};
    } else if (m + 1 < n) {
      SparseTensor t({spec.dims[m], extent, spec.dims[m], extent});
      for (std::int64_t v = 0; v < spec.dims[m]; ++v)
        for (std::int64_t s = 0; s < extent; ++s) {
          const std::int64_t next = fval(v, spec.qmin + s);
          if (next < spec.qmin || next >= spec.qmin + extent) continue;
          t.add({v, s, v, next - spec.qmin}, 1.0);
        }
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(m), std::move(t), 0, 2));
      net.add_bond(sig, {wires[m].tail.node, 1});
      sig = {wires[m].tail.node, 3};
    } else {
      SparseTensor t({spec.dims[m], extent, spec.dims[m]});
      for (std::int64_t v = 0; v < spec.dims[m]; ++v)
        for (std::int64_t s = 0; s < extent; ++s)
          t.add({v, s, v},
                std::exp(-tau * static_cast<double>(fval(v, spec.qmin + s))));
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(m), std::move(t), 0, 2));
      net.add_bond(sig, {wires[m].tail.node, 1});
    }
  }
  return finish_plus_capped(std::move(net), std::move(wires), spec.dims, false);
}

BuiltProblem build_single_one(const SingleOneSpec& spec, const BuildContext&) {
  const auto n = static_cast<std::size_t>(spec.n);
  const std::vector<std::int64_t> dims(n, 2);
  TensorNetwork net;
  std::vector<Wire> wires;

  if (n == 1) {
    SparseTensor t({2, 2});
    t.add({1, 1}, 1.0);
    t.canonicalize();
    wires.push_back(start_wire(net, var_label(0), std::move(t), 0, 1));
    return finish_plus_capped(std::move(net), std::move(wires), dims, true);
  }

  LegRef count;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0) {
      // (bit, wire out, ones-so-far out)
      SparseTensor t({2, 2, 2});
      t.add({0, 0, 0}, 1.0);
      t.add({1, 1, 1}, 1.0);
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(0), std::move(t), 0, 1));
      count = {wires[0].tail.node, 2};
    } else if (k + 1 < n) {
      // (bit, ones in, wire out, ones out): a second 1 kills the amplitude.
      SparseTensor t({2, 2, 2, 2});
      t.add({0, 0, 0, 0}, 1.0);
      t.add({1, 0, 1, 1}, 1.0);
      t.add({0, 1, 0, 1}, 1.0);
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(k), std::move(t), 0, 2));
      net.add_bond(count, {wires[k].tail.node, 1});
      count = {wires[k].tail.node, 3};
    } else {
      // (bit, ones in, wire out): forces exactly one 1 overall.
      SparseTensor t({2, 2, 2});
      t.add({1, 0, 1}, 1.0);
      t.add({0, 1, 0}, 1.0);
      t.canonicalize();
      wires.push_back(start_wire(net, var_label(k), std::move(t), 0, 2));
      net.add_bond(count, {wires[k].tail.node, 1});
    }
  }
  return finish_plus_capped(std::move(net), std::move(wires), dims, true);
}

// ---- counting / repetition layers ----

namespace {

std::vector<SparseTensor> occurrence_layer(int n_vars, std::int64_t dim,
                                           std::int64_t value, std::int64_t bound,
                                           bool exact) {
  if (n_vars < 1) throw InvalidArgument("layer needs at least one wire");
  if (value < 0 || value >= dim) throw InvalidArgument("layer value out of range");
  if (bound < 0) throw InvalidArgument("layer bound must be nonnegative");
  const std::int64_t cext = bound + 1;
  auto hit = [&](std::int64_t v) { return v == value ? 1 : 0; };
  auto accept = [&](std::int64_t total) { return exact ? total == bound : total <= bound; };

  std::vector<SparseTensor> out;
  if (n_vars == 1) {
    SparseTensor t({dim, dim});
    for (std::int64_t v = 0; v < dim; ++v)
      if (accept(hit(v))) t.add({v, v}, 1.0);
    out.push_back(std::move(t.canonicalize()));
    return out;
  }
  {
    SparseTensor t({dim, dim, cext});
    for (std::int64_t v = 0; v < dim; ++v)
      if (hit(v) <= bound) t.add({v, v, hit(v)}, 1.0);
    out.push_back(std::move(t.canonicalize()));
  }
  for (int k = 1; k + 1 < n_vars; ++k) {
    SparseTensor t({dim, cext, dim, cext});
    for (std::int64_t v = 0; v < dim; ++v)
      for (std::int64_t c = 0; c < cext; ++c)
        if (c + hit(v) <= bound) t.add({v, c, v, c + hit(v)}, 1.0);
    out.push_back(std::move(t.canonicalize()));
  }
  {
    SparseTensor t({dim, cext, dim});
    for (std::int64_t v = 0; v < dim; ++v)
      for (std::int64_t c = 0; c < cext; ++c)
        if (accept(c + hit(v))) t.add({v, c, v}, 1.0);
    out.push_back(std::move(t.canonicalize()));
  }
  return out;
}

}  // namespace

std::vector<SparseTensor> build_counting_layer(int n_vars, std::int64_t dim,
                                               std::int64_t value, std::int64_t bound) {
  return occurrence_layer(n_vars, dim, value, bound, /*exact=*/false);
}

std::vector<SparseTensor> build_repetition_layer(int n_vars, std::int64_t dim,
                                                 std::int64_t value, std::int64_t bound) {
  return occurrence_layer(n_vars, dim, value, bound, /*exact=*/true);
}

// ---- dispatch ----

bool supports_layer_limit(const ProblemSpec& spec) {
  return std::holds_alternative<TspSpec>(spec);
}

BuiltProblem build_network(const ProblemSpec& spec, const BuildContext& ctx) {
  return std::visit(
      [&ctx](const auto& s) -> BuiltProblem {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, QuboSpec> || std::is_same_v<T, QudoSpec> ||
                      std::is_same_v<T, TqudoSpec>)
          return build_quadratic(s, ctx);
        else if constexpr (std::is_same_v<T, HoboSpec>)
          return build_hobo(s, ctx);
        else if constexpr (std::is_same_v<T, SumFunctionSpec>)
          return build_sum_function(s, ctx);
        else if constexpr (std::is_same_v<T, NestedSpec>)
          return build_nested(s, ctx);
        else if constexpr (std::is_same_v<T, AdditionSpec>)
          return build_addition_inverter(s, ctx);
        else if constexpr (std::is_same_v<T, MultiplicationSpec>)
          return build_multiplication_inverter(s, ctx);
        else if constexpr (std::is_same_v<T, LinearSystemSpec>)
          return build_linear_system(s, ctx);
        else if constexpr (std::is_same_v<T, SingleOneSpec>)
          return build_single_one(s, ctx);
        else if constexpr (std::is_same_v<T, PartitionSpec>)
          return build_partition(s, ctx);
        else if constexpr (std::is_same_v<T, ColoringSpec>)
          return build_coloring(s, ctx);
        else if constexpr (std::is_same_v<T, ShortestPathSpec>)
          return build_shortest_path(s, ctx);
        else if constexpr (std::is_same_v<T, TspSpec>)
          return build_tsp(s, ctx);
        else if constexpr (std::is_same_v<T, KnapsackSpec>)
          return build_knapsack(s, ctx);
        else if constexpr (std::is_same_v<T, IlpSpec> || std::is_same_v<T, IqpSpec> ||
                           std::is_same_v<T, IppSpec>)
          return build_integer_program(s, ctx);
        else if constexpr (std::is_same_v<T, MisSpec>)
          return build_mis(s, ctx);
        else if constexpr (std::is_same_v<T, VertexCoverSpec>)
          return build_vertex_cover(s, ctx);
        else if constexpr (std::is_same_v<T, DominatingSetSpec>)
          return build_dominating_set(s, ctx);
        else if constexpr (std::is_same_v<T, AssignmentSpec>)
          return build_assignment(s, ctx);
      },
      spec);
}

}  // namespace tensolve
