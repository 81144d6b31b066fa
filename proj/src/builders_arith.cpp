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

// Arithmetic circuits (adders, conditional-add multipliers, dot-product
// grids) and the packing/assignment families built on them.

#include <algorithm>
#include <cmath>

#include "builders_internal.hpp"

namespace tensolve {

using detail::cap_plus;
using detail::diag_amp;
using detail::emit_interaction_chains;
using detail::extend_wire;
using detail::finish_layout;
using detail::start_wire;
using detail::var_label;
using detail::InteractionTerm;
using detail::Wire;

BuiltProblem build_addition_inverter(const AdditionSpec& spec, const BuildContext&) {
  const int n = spec.bits;
  TensorNetwork net;
  std::vector<Wire> wires;  // interleaved: a0, b0, a1, b1, ...
  const std::vector<std::int64_t> dims(static_cast<std::size_t>(2 * n), 2);

  auto c_bit = [&](int k) { return static_cast<std::int64_t>((spec.c >> k) & 1); };

  LegRef carry;
  for (int k = 0; k < n; ++k) {
    NodeId id;
    if (k == 0) {
      // (a0, b0, sum bit, carry)
      SparseTensor t({2, 2, 2, 2});
      for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t y = 0; y < 2; ++y)
          t.add({x, y, x ^ y, (x + y) / 2}, 1.0);
      id = net.add_node(std::move(t.canonicalize()));
      carry = {id, 3};
    } else {
      // (ak, bk, carry in, sum bit, carry out)
      SparseTensor t({2, 2, 2, 2, 2});
      for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t y = 0; y < 2; ++y)
          for (std::int64_t z = 0; z < 2; ++z)
            t.add({x, y, z, x ^ y ^ z, (x + y + z) / 2}, 1.0);
      id = net.add_node(std::move(t.canonicalize()));
      net.add_bond(carry, {id, 2});
      carry = {id, 4};
    }
    wires.push_back(Wire{"a" + std::to_string(k), {id, 0}, {}});
    wires.push_back(Wire{"b" + std::to_string(k), {id, 1}, {}});
    const int sum_slot = (k == 0) ? 2 : 3;
    const NodeId proj = net.add_node(make_projection(2, c_bit(k)));
    net.add_bond({id, sum_slot}, {proj, 0});
  }
  const NodeId final_carry = net.add_node(make_projection(2, c_bit(n)));
  net.add_bond(carry, {final_carry, 0});

  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = true;
  return detail::finalize_build(std::move(out));
}

BuiltProblem build_multiplication_inverter(const MultiplicationSpec& spec,
                                           const BuildContext&) {
  const int na = spec.bits_a, nb = spec.bits_b;
  const std::int64_t bext = std::int64_t{1} << nb;
  TensorNetwork net;
  std::vector<Wire> wires;
  std::vector<std::int64_t> dims(static_cast<std::size_t>(na + nb), 2);

  // a bits: open legs consumed directly by the conditional-add stages.
  std::vector<LegRef> a_legs(static_cast<std::size_t>(na));

  // b register: accumulate the operand value from its bits.
  std::vector<Wire> b_wires;
  LegRef b_value;
  for (int m = 0; m < nb; ++m) {
    if (m == 0) {
      SparseTensor t({2, 2, 2});
      t.add({0, 0, 0}, 1.0);
      t.add({1, 1, 1}, 1.0);
      b_wires.push_back(start_wire(net, "b0", std::move(t.canonicalize()), 0, 1));
      b_value = {b_wires[0].tail.node, 2};
    } else {
      const std::int64_t in_ext = std::int64_t{1} << m;
      SparseTensor t({2, in_ext, 2, in_ext * 2});
      for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t s = 0; s < in_ext; ++s)
          t.add({x, s, x, s + (x << m)}, 1.0);
      b_wires.push_back(
          start_wire(net, "b" + std::to_string(m), std::move(t.canonicalize()), 0, 2));
      net.add_bond(b_value, {b_wires.back().tail.node, 1});
      b_value = {b_wires.back().tail.node, 3};
    }
  }

  // Fan the b value out to each stage.
  std::vector<LegRef> b_taps(static_cast<std::size_t>(na));
  if (na == 1) {
    b_taps[0] = b_value;
  } else {
    LegRef in = b_value;
    for (int t = 0; t + 1 < na; ++t) {
      const NodeId d = net.add_node(make_delta(3, bext));
      net.add_bond(in, {d, 0});
      b_taps[static_cast<std::size_t>(t)] = {d, 1};
      in = {d, 2};
    }
    b_taps[static_cast<std::size_t>(na - 1)] = in;
  }

  // Conditional-add cascade: stage k adds a_k * b to the running sum; the low
  // bit of each stage total is the product bit c_k, the rest carries on.
  auto c_bit = [&](int k) { return static_cast<std::int64_t>((spec.c >> k) & 1); };
  LegRef carry;
  for (int k = 0; k < na; ++k) {
    NodeId id;
    if (k == 0) {
      SparseTensor t({2, bext, 2, bext});
      for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t w = 0; w < bext; ++w) {
          const std::int64_t total = x * w;
          t.add({x, w, total & 1, total >> 1}, 1.0);
        }
      id = net.add_node(std::move(t.canonicalize()));
      a_legs[0] = {id, 0};
      net.add_bond(b_taps[0], {id, 1});
      carry = {id, 3};
    } else {
      SparseTensor t({2, bext, bext, 2, bext});
      for (std::int64_t x = 0; x < 2; ++x)
        for (std::int64_t w = 0; w < bext; ++w)
          for (std::int64_t s = 0; s < bext; ++s) {
            const std::int64_t total = s + x * w;
            t.add({x, w, s, total & 1, total >> 1}, 1.0);
          }
      id = net.add_node(std::move(t.canonicalize()));
      a_legs[static_cast<std::size_t>(k)] = {id, 0};
      net.add_bond(b_taps[static_cast<std::size_t>(k)], {id, 1});
      net.add_bond(carry, {id, 2});
      carry = {id, 4};
    }
    const int c_slot = (k == 0) ? 2 : 3;
    const NodeId proj = net.add_node(make_projection(2, c_bit(k)));
    net.add_bond({id, c_slot}, {proj, 0});
  }
  const NodeId high = net.add_node(
      make_projection(bext, static_cast<std::int64_t>(spec.c >> na)));
  net.add_bond(carry, {high, 0});

  for (int k = 0; k < na; ++k)
    wires.push_back(Wire{"a" + std::to_string(k), a_legs[static_cast<std::size_t>(k)], {}});
  for (Wire& w : b_wires) {
    cap_plus(net, w, 2);
    wires.push_back(w);
  }

  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = true;
  return detail::finalize_build(std::move(out));
}

namespace {

// Dot-product grid for A x (=|<=) b. Consumes one dangling value leg per
// column; each row accumulates its product sum left to right, clamped at the
// first dead value, and ends in a projection (equality) or step boundary.
void emit_constraint_grid(TensorNetwork& net, const IntMatrix& a,
                          const std::vector<std::int64_t>& b,
                          const std::vector<std::int64_t>& dims,
                          std::vector<LegRef>& columns, bool equality) {
  const std::size_t rows = a.size();
  const std::size_t cols = dims.size();

  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t prefix = 0;
    std::vector<std::int64_t> clamp(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      prefix += a[i][j] * (dims[j] - 1);
      clamp[j] = std::min(prefix, b[i]);
    }

    LegRef sum;
    for (std::size_t j = 0; j < cols; ++j) {
      const bool last_row = (i + 1 == rows);
      const std::int64_t in_ext = (j == 0) ? 0 : clamp[j - 1] + 1;
      const std::int64_t out_ext = clamp[j] + 1;
      NodeId id;
      if (j == 0) {
        std::vector<std::int64_t> tdims = {dims[j], out_ext};
        if (!last_row) tdims.push_back(dims[j]);
        SparseTensor t(tdims);
        for (std::int64_t v = 0; v < dims[j]; ++v) {
          const std::int64_t s = a[i][j] * v;
          if (s > clamp[j]) continue;
          if (last_row)
            t.add({v, s}, 1.0);
          else
            t.add({v, s, v}, 1.0);
        }
        id = net.add_node(std::move(t.canonicalize()));
      } else {
        std::vector<std::int64_t> tdims = {in_ext, dims[j], out_ext};
        if (!last_row) tdims.push_back(dims[j]);
        SparseTensor t(tdims);
        for (std::int64_t l = 0; l < in_ext; ++l)
          for (std::int64_t v = 0; v < dims[j]; ++v) {
            const std::int64_t s = l + a[i][j] * v;
            if (s > clamp[j]) continue;
            if (last_row)
              t.add({l, v, s}, 1.0);
            else
              t.add({l, v, s, v}, 1.0);
          }
        id = net.add_node(std::move(t.canonicalize()));
        net.add_bond(sum, {id, 0});
      }
      // Value in from above (the column), value copy out below.
      const int value_in = (j == 0) ? 0 : 1;
      net.add_bond(columns[j * rows + i], {id, value_in});
      if (!last_row) {
        const int down = (j == 0) ? 2 : 3;
        // Register the down-copy as the next row's incoming column leg.
        columns[j * rows + i + 1] = {id, down};
      }
      sum = {id, (j == 0) ? 1 : 2};
    }

    // Row boundary over extent clamp[cols-1] + 1.
    const std::int64_t ext = clamp[cols - 1] + 1;
    SparseTensor boundary({ext});
    if (equality) {
      if (b[i] < ext) boundary.add({b[i]}, 1.0);
      // An unreachable b[i] leaves the boundary empty: the row cannot match.
    } else {
      for (std::int64_t v = 0; v < ext && v <= b[i]; ++v) boundary.add({v}, 1.0);
    }
    const NodeId bnode = net.add_node(std::move(boundary.canonicalize()));
    net.add_bond(sum, {bnode, 0});
  }
}

// Wires each variable tail into the constraint grid and finishes the build.
BuiltProblem finish_with_grid(TensorNetwork net, std::vector<Wire> wires,
                              const IntMatrix& a, const std::vector<std::int64_t>& b,
                              const std::vector<std::int64_t>& dims, bool equality) {
  const std::size_t rows = a.size();
  const std::size_t cols = dims.size();
  // columns[j * rows + i]: the leg carrying x_j's value into row i. Row 0
  // takes the chain tails; the grid emitter fills in the down-copies.
  std::vector<LegRef> columns(cols * rows);
  for (std::size_t j = 0; j < cols; ++j) columns[j * rows] = wires[j].tail;
  emit_constraint_grid(net, a, b, dims, columns, equality);

  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = equality;  // inversion grids carry no weights
  return detail::finalize_build(std::move(out));
}

}  // namespace

BuiltProblem build_linear_system(const LinearSystemSpec& spec, const BuildContext&) {
  TensorNetwork net;
  std::vector<Wire> wires;
  for (std::size_t j = 0; j < spec.dims.size(); ++j)
    wires.push_back(start_wire(
        net, var_label(j),
        diag_amp(spec.dims[j], [](std::int64_t) { return Amplitude{1.0, 0.0}; }), 0, 1));
  return finish_with_grid(std::move(net), std::move(wires), spec.a, spec.b, spec.dims,
                          /*equality=*/true);
}

BuiltProblem build_integer_program(const IlpSpec& spec, const BuildContext& ctx) {
  TensorNetwork net;
  std::vector<Wire> wires;
  for (std::size_t j = 0; j < spec.dims.size(); ++j) {
    const double c = spec.c[j];
    wires.push_back(start_wire(net, var_label(j),
                               diag_amp(spec.dims[j],
                                        [c, &ctx](std::int64_t v) -> std::optional<Amplitude> {
                                          // maximization layer
                                          return Amplitude{
                                              std::exp(ctx.tau * c * static_cast<double>(v)),
                                              0.0};
                                        }),
                               0, 1));
  }
  return finish_with_grid(std::move(net), std::move(wires), spec.a, spec.b, spec.dims,
                          /*equality=*/false);
}

BuiltProblem build_integer_program(const IqpSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  TensorNetwork net;
  std::vector<InteractionTerm> terms;
  for (std::size_t i = 0; i < spec.q.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.q[i][j] == 0.0) continue;
      const double q = spec.q[i][j];
      terms.push_back(InteractionTerm{
          {static_cast<int>(i), static_cast<int>(j)},
          [q, tau](const std::vector<std::int64_t>& v) -> Amplitude {
            return std::exp(-tau * q * static_cast<double>(v[0]) *
                            static_cast<double>(v[1]));
          }});
    }
  std::vector<Wire> wires = emit_interaction_chains(
      net, spec.dims, terms, [&](std::size_t a, std::int64_t v) -> Amplitude {
        const double vv = static_cast<double>(v);
        return std::exp(-tau * (spec.q[a][a] * vv * vv + spec.c[a] * vv));
      });
  return finish_with_grid(std::move(net), std::move(wires), spec.a, spec.b, spec.dims,
                          /*equality=*/false);
}

BuiltProblem build_integer_program(const IppSpec& spec, const BuildContext& ctx) {
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
        row[v] += term.table.empty() ? term.coeff * static_cast<double>(v) : term.table[v];
      continue;
    }
    if (term.table.empty() && term.coeff == 0.0) continue;
    std::vector<std::int64_t> vdims;
    for (int v : term.vars) vdims.push_back(spec.dims[static_cast<std::size_t>(v)]);
    const HoboTerm t = term;
    terms.push_back(InteractionTerm{
        term.vars, [t, vdims, tau](const std::vector<std::int64_t>& v) -> Amplitude {
          double cost;
          if (t.table.empty()) {
            cost = t.coeff;
            for (std::int64_t x : v) cost *= static_cast<double>(x);
          } else {
            std::size_t key = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
              key = key * static_cast<std::size_t>(vdims[i]) + static_cast<std::size_t>(v[i]);
            cost = t.table[key];
          }
          return std::exp(-tau * cost);
        }});
  }
  std::vector<Wire> wires = emit_interaction_chains(
      net, spec.dims, terms, [&](std::size_t a, std::int64_t v) -> Amplitude {
        return std::exp(-tau * diag[a][static_cast<std::size_t>(v)]);
      });
  return finish_with_grid(std::move(net), std::move(wires), spec.a, spec.b, spec.dims,
                          /*equality=*/false);
}

BuiltProblem build_knapsack(const KnapsackSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  const std::size_t n = spec.caps.size();
  std::vector<std::int64_t> dims;
  for (std::int64_t c : spec.caps) dims.push_back(c + 1);

  auto accept = [&](std::int64_t weight) {
    std::int64_t measure = weight;
    if (spec.variant == KnapsackVariant::kPolynomial) {
      std::int64_t f = 0, p = 1;
      for (std::int64_t a : spec.poly) {
        f += a * p;
        p *= weight;
      }
      measure = f;
    }
    return measure <= spec.capacity;
  };
  const bool clamp_at_capacity = spec.variant != KnapsackVariant::kPolynomial;

  TensorNetwork net;
  std::vector<Wire> wires;

  if (n == 1) {
    wires.push_back(start_wire(
        net, var_label(0), diag_amp(dims[0], [&](std::int64_t v) -> std::optional<Amplitude> {
          if (!accept(spec.w[0][static_cast<std::size_t>(v)])) return std::nullopt;
          return Amplitude{std::exp(tau * spec.v[0][static_cast<std::size_t>(v)]), 0.0};
        }),
        0, 1));
  } else {
    std::vector<std::int64_t> clamp(n);
    std::int64_t prefix = 0;
    for (std::size_t k = 0; k < n; ++k) {
      prefix += *std::max_element(spec.w[k].begin(), spec.w[k].end());
      clamp[k] = clamp_at_capacity ? std::min(prefix, spec.capacity) : prefix;
    }

    LegRef sig;
    for (std::size_t k = 0; k < n; ++k) {
      auto value_amp = [&](std::int64_t v) {
        return std::exp(tau * spec.v[k][static_cast<std::size_t>(v)]);
      };
      if (k == 0) {
        SparseTensor t({dims[0], dims[0], clamp[0] + 1});
        for (std::int64_t v = 0; v < dims[0]; ++v) {
          const std::int64_t w = spec.w[0][static_cast<std::size_t>(v)];
          if (w > clamp[0]) continue;
          t.add({v, v, w}, value_amp(v));
        }
        wires.push_back(start_wire(net, var_label(0), std::move(t.canonicalize()), 0, 1));
        sig = {wires[0].tail.node, 2};
      } else if (k + 1 < n) {
        SparseTensor t({dims[k], clamp[k - 1] + 1, dims[k], clamp[k] + 1});
        for (std::int64_t v = 0; v < dims[k]; ++v)
          for (std::int64_t s = 0; s <= clamp[k - 1]; ++s) {
            const std::int64_t w = s + spec.w[k][static_cast<std::size_t>(v)];
            if (w > clamp[k]) continue;
            t.add({v, s, v, w}, value_amp(v));
          }
        wires.push_back(start_wire(net, var_label(k), std::move(t.canonicalize()), 0, 2));
        net.add_bond(sig, {wires[k].tail.node, 1});
        sig = {wires[k].tail.node, 3};
      } else {
        SparseTensor t({dims[k], clamp[k - 1] + 1, dims[k]});
        for (std::int64_t v = 0; v < dims[k]; ++v)
          for (std::int64_t s = 0; s <= clamp[k - 1]; ++s) {
            if (!accept(s + spec.w[k][static_cast<std::size_t>(v)])) continue;
            t.add({v, s, v}, value_amp(v));
          }
        wires.push_back(start_wire(net, var_label(k), std::move(t.canonicalize()), 0, 2));
        net.add_bond(sig, {wires[k].tail.node, 1});
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) cap_plus(net, wires[k], dims[k]);
  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = false;
  return detail::finalize_build(std::move(out));
}

BuiltProblem build_assignment(const AssignmentSpec& spec, const BuildContext& ctx) {
  const double tau = ctx.tau;
  const int agents = static_cast<int>(spec.costs.size());
  const auto tasks = static_cast<std::int64_t>(spec.costs[0].size());
  const std::vector<std::int64_t> dims(static_cast<std::size_t>(agents), tasks);

  TensorNetwork net;
  std::vector<Wire> wires;
  for (int i = 0; i < agents; ++i) {
    const auto& row = spec.costs[static_cast<std::size_t>(i)];
    const double lambda = spec.lambda;
    wires.push_back(start_wire(
        net, var_label(static_cast<std::size_t>(i)),
        diag_amp(tasks,
                 [&row, lambda, tau](std::int64_t v) -> std::optional<Amplitude> {
                   const double bonus = (v == 0) ? 0.0 : lambda;
                   return Amplitude{
                       std::exp(-tau * row[static_cast<std::size_t>(v)] + tau * bonus), 0.0};
                 }),
        0, 1));
  }

  // One cap-1 counting layer per real task keeps assignments injective.
  for (std::int64_t t = 1; t < tasks; ++t) {
    std::vector<SparseTensor> layer = build_counting_layer(agents, tasks, t, 1);
    LegRef count;
    for (int i = 0; i < agents; ++i) {
      SparseTensor tens = std::move(layer[static_cast<std::size_t>(i)]);
      if (agents == 1) {
        extend_wire(net, wires[0], std::move(tens), 0, 1);
      } else if (i == 0) {
        const NodeId id = extend_wire(net, wires[0], std::move(tens), 0, 1);
        count = {id, 2};
      } else if (i + 1 < agents) {
        const NodeId id =
            extend_wire(net, wires[static_cast<std::size_t>(i)], std::move(tens), 0, 2);
        net.add_bond(count, {id, 1});
        count = {id, 3};
      } else {
        const NodeId id =
            extend_wire(net, wires[static_cast<std::size_t>(i)], std::move(tens), 0, 2);
        net.add_bond(count, {id, 1});
      }
    }
  }

  for (int i = 0; i < agents; ++i)
    cap_plus(net, wires[static_cast<std::size_t>(i)], tasks);
  BuiltProblem out;
  out.layout = finish_layout(net, wires, dims);
  out.net = std::move(net);
  out.unit_amplitudes = false;
  return detail::finalize_build(std::move(out));
}

}  // namespace tensolve
