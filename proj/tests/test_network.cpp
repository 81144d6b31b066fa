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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tensolve/builders.hpp"
#include "tensolve/network.hpp"

using namespace tensolve;

namespace {

// Chain of `n` matrices of extent d with open legs at both ends.
TensorNetwork make_chain(int n, std::int64_t d, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  TensorNetwork net;
  NodeId prev = -1;
  for (int i = 0; i < n; ++i) {
    SparseTensor t({d, d});
    for (std::int64_t a = 0; a < d; ++a)
      for (std::int64_t b = 0; b < d; ++b) t.add({a, b}, dist(rng));
    const NodeId id = net.add_node(std::move(t.canonicalize()));
    if (i == 0)
      net.mark_open("left", {id, 0});
    else
      net.add_bond({prev, 1}, {id, 0});
    prev = id;
  }
  net.mark_open("right", {prev, 1});
  net.validate();
  return net;
}

// Random fully wired network with the given number of nodes.
TensorNetwork random_network(std::mt19937& rng, int max_nodes, std::int64_t max_extent,
                             int* open_count = nullptr) {
  std::uniform_int_distribution<int> node_dist(2, max_nodes);
  std::uniform_int_distribution<std::int64_t> ext_dist(1, max_extent);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const int n = node_dist(rng);

  // Random tree bonds keep it connected; extra bonds sometimes.
  struct Slot {
    int node;
    std::int64_t dim;
  };
  std::vector<std::vector<std::int64_t>> dims(static_cast<std::size_t>(n));
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> bonds;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> peer(0, i - 1);
    const int p = peer(rng);
    const std::int64_t d = ext_dist(rng);
    dims[static_cast<std::size_t>(i)].push_back(d);
    dims[static_cast<std::size_t>(p)].push_back(d);
    bonds.push_back({{i, static_cast<int>(dims[static_cast<std::size_t>(i)].size()) - 1},
                     {p, static_cast<int>(dims[static_cast<std::size_t>(p)].size()) - 1}});
  }
  std::uniform_int_distribution<int> extra(0, 2);
  for (int e = extra(rng); e > 0; --e) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const std::int64_t d = ext_dist(rng);
    dims[static_cast<std::size_t>(a)].push_back(d);
    dims[static_cast<std::size_t>(b)].push_back(d);
    bonds.push_back({{a, static_cast<int>(dims[static_cast<std::size_t>(a)].size()) - 1},
                     {b, static_cast<int>(dims[static_cast<std::size_t>(b)].size()) - 1}});
  }
  // A few open legs.
  std::vector<std::pair<int, int>> open;
  std::uniform_int_distribution<int> open_cnt(0, 2);
  for (int o = open_cnt(rng); o > 0; --o) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int a = pick(rng);
    dims[static_cast<std::size_t>(a)].push_back(ext_dist(rng));
    open.push_back({a, static_cast<int>(dims[static_cast<std::size_t>(a)].size()) - 1});
  }

  TensorNetwork net;
  std::vector<NodeId> ids;
  for (int i = 0; i < n; ++i) {
    SparseTensor t(dims[static_cast<std::size_t>(i)]);
    // Dense-ish random content.
    const std::uint64_t vol = t.volume();
    for (std::uint64_t k = 0; k < vol; ++k) {
      std::vector<std::int64_t> idx;
      std::uint64_t rest = k;
      for (std::size_t l = dims[static_cast<std::size_t>(i)].size(); l-- > 0;) {
        idx.insert(idx.begin(),
                   static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(
                                                        dims[static_cast<std::size_t>(i)][l])));
        rest /= static_cast<std::uint64_t>(dims[static_cast<std::size_t>(i)][l]);
      }
      t.add(idx, {amp(rng), amp(rng)});
    }
    ids.push_back(net.add_node(std::move(t.canonicalize())));
  }
  for (const auto& [a, b] : bonds)
    net.add_bond({ids[static_cast<std::size_t>(a.first)], a.second},
                 {ids[static_cast<std::size_t>(b.first)], b.second});
  int oc = 0;
  for (const auto& [node, slot] : open)
    net.mark_open("o" + std::to_string(oc++), {ids[static_cast<std::size_t>(node)], slot});
  if (open_count) *open_count = oc;
  net.validate();
  return net;
}

double rel_diff(const SparseTensor& a, double log_a, const SparseTensor& b, double log_b) {
  // Compare a*e^{log_a} with b*e^{log_b} entrywise, relative to the largest
  // magnitude present.
  double worst = 0.0, scale = 0.0;
  const double shift = std::exp(log_b - log_a);
  for (std::size_t i = 0; i < a.nnz(); ++i) scale = std::max(scale, std::abs(a.amplitude(i)));
  auto idx_of = [](const SparseTensor& t, std::size_t i) { return t.unpack(t.key(i)); };
  for (std::size_t i = 0; i < a.nnz(); ++i) {
    const auto idx = idx_of(a, i);
    const Amplitude other = b.at(std::span<const std::int64_t>(idx.data(), idx.size()));
    worst = std::max(worst, std::abs(a.amplitude(i) - other * shift));
  }
  for (std::size_t i = 0; i < b.nnz(); ++i) {
    const auto idx = idx_of(b, i);
    const Amplitude mine = a.at(std::span<const std::int64_t>(idx.data(), idx.size()));
    worst = std::max(worst, std::abs(mine - b.amplitude(i) * shift));
  }
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

TEST_CASE("validate catches broken wiring") {
  TensorNetwork net;
  const NodeId a = net.add_node(make_plus(2));
  CHECK_THROWS_AS(net.validate(), InvalidArgument);  // unwired slot
  net.mark_open("x", {a, 0});
  net.validate();
  CHECK_THROWS_AS(net.mark_open("x", {a, 0}), InvalidArgument);  // duplicate label
}

TEST_CASE("two-node plan is a single step") {
  TensorNetwork net;
  const NodeId a = net.add_node(make_plus(2));
  const NodeId b = net.add_node(make_plus(2));
  net.add_bond({a, 0}, {b, 0});
  const ContractionPlan plan = plan_contraction(net);
  REQUIRE(plan.steps.size() == 1);
  const auto res = contract(net, plan);
  CHECK(res.tensor.scalar().real() * std::exp(res.log_scale) == doctest::Approx(2.0));
}

TEST_CASE("six-node chain plans a left-to-right sweep") {
  std::mt19937 rng(3);
  const TensorNetwork net = make_chain(6, 2, rng);
  const ContractionPlan plan = plan_contraction(net);
  REQUIRE(plan.steps.size() == 5);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    CHECK(plan.steps[i].a == 0);
    CHECK(plan.steps[i].b == static_cast<NodeId>(i + 1));
  }
}

TEST_CASE("tsp plan stays below the dense state space") {
  TspSpec tsp;
  const int v = 5;
  tsp.e.assign(v, std::vector<std::optional<double>>(v));
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j)
      if (i != j) tsp.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0 + i + j;
  BuildContext ctx;
  const BuiltProblem built = build_tsp(tsp, ctx);
  // Plan the network the solver actually contracts: every variable leg but
  // the first closed with plus vectors.
  TensorNetwork closed = built.net;
  for (std::size_t k = 1; k < built.layout.variables.size(); ++k)
    closed = attach_boundary(closed, built.layout.variables[k].label,
                             make_plus(built.layout.variables[k].dim));
  const ContractionPlan plan = plan_contraction(closed);
  // The brute-force state space for 5 cities is 5^4.
  CHECK(plan.max_log_volume < std::log(std::pow(5.0, 4.0)));
}

TEST_CASE("contract folds the log scale back") {
  // Chain long enough that the raw product would underflow a double.
  TensorNetwork net;
  const int n = 300;
  NodeId prev = -1;
  for (int i = 0; i < n; ++i) {
    const NodeId id = net.add_node(scale(make_delta(2, 2), 1e-3));
    if (i > 0) net.add_bond({prev, 1}, {id, 0});
    prev = id;
  }
  net.mark_open("left", {net.node_ids().front(), 0});
  net.mark_open("right", {prev, 1});
  const auto res = contract(net);
  CHECK(!res.degenerate);
  // Each factor contributes 1e-3; the product itself is ~1e-900.
  const double value = std::log(res.tensor.at({0, 0}).real()) + res.log_scale;
  CHECK(value == doctest::Approx(n * std::log(1e-3)));
}

TEST_CASE("degenerate contraction reports an empty result") {
  TensorNetwork net;
  SparseTensor zero({2});
  zero.canonicalize();
  const NodeId a = net.add_node(zero);
  const NodeId b = net.add_node(make_plus(2));
  net.add_bond({a, 0}, {b, 0});
  const auto res = contract(net);
  CHECK(res.degenerate);
  CHECK(res.log_scale == -std::numeric_limits<double>::infinity());
}

TEST_CASE("attach_boundary closes legs") {
  TensorNetwork net;
  const NodeId id = net.add_node(make_delta(2, 2));
  net.mark_open("in", {id, 0});
  net.mark_open("out", {id, 1});

  const TensorNetwork picked = attach_boundary(net, "in", make_projection(2, 1));
  const auto res = contract(picked);
  const SparseTensor vec = res.tensor;
  CHECK(vec.at({0}).real() * std::exp(res.log_scale) == doctest::Approx(0.0));
  CHECK(vec.at({1}).real() * std::exp(res.log_scale) == doctest::Approx(1.0));

  const TensorNetwork both = attach_boundary(
      attach_boundary(net, "in", make_plus(2)), "out", make_plus(2));
  const auto scalar_res = contract(both);
  CHECK(scalar_res.tensor.scalar().real() * std::exp(scalar_res.log_scale) ==
        doctest::Approx(2.0));

  CHECK_THROWS_AS(attach_boundary(net, "missing", make_plus(2)), InvalidArgument);
  CHECK_THROWS_AS(attach_boundary(net, "in", make_plus(3)), ShapeError);
}

TEST_CASE("single one input network sums to N") {
  BuildContext ctx;
  const BuiltProblem built = build_single_one(SingleOneSpec{4}, ctx);
  TensorNetwork closed = built.net;
  for (const auto& var : built.layout.variables)
    closed = attach_boundary(closed, var.label, make_plus(var.dim));
  const auto res = contract(closed);
  CHECK(res.tensor.scalar().real() * std::exp(res.log_scale) == doctest::Approx(4.0));
}

TEST_CASE("plan independence on random networks") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const TensorNetwork net = random_network(rng, 8, 4);
    const auto greedy = contract(net, plan_contraction(net));
    for (int p = 0; p < 3; ++p) {
      const ContractionPlan plan = random_plan(net, rng);
      const auto res = contract(net, plan);
      REQUIRE(res.degenerate == greedy.degenerate);
      if (greedy.degenerate) continue;
      CHECK(rel_diff(greedy.tensor, greedy.log_scale, res.tensor, res.log_scale) < 1e-9);
    }
  }
}

TEST_CASE("disconnected components multiply") {
  TensorNetwork net;
  const NodeId a = net.add_node(scale(make_plus(2), 3.0));
  const NodeId b = net.add_node(scale(make_plus(2), 5.0));
  net.mark_open("x", {a, 0});
  net.mark_open("y", {b, 0});
  const auto res = contract(net);
  REQUIRE(res.tensor.rank() == 2);
  CHECK(res.tensor.at({1, 0}).real() * std::exp(res.log_scale) == doctest::Approx(15.0));
}

TEST_CASE("half partial trace on the addition network") {
  BuildContext ctx;
  const BuiltProblem built = build_addition_inverter(AdditionSpec{3, 2}, ctx);

  // target a0 with nothing fixed: both branches hold solutions
  TraceOptions opts;
  const TraceResult t0 = half_partial_trace(built.net, built.layout, 0, opts);
  CHECK(std::abs(t0.amplitudes[0]) > 0.0);
  CHECK(std::abs(t0.amplitudes[1]) > 0.0);

  // fixing a = 1 (bits a0=1, a1=0) forces b = 2
  TraceOptions fixed_a;
  fixed_a.fixed[0] = 1;  // a0
  fixed_a.fixed[2] = 0;  // a1
  const TraceResult tb0 = half_partial_trace(built.net, built.layout, 1, fixed_a);
  CHECK(std::abs(tb0.amplitudes[0]) > 0.0);  // b0 = 0
  CHECK(std::abs(tb0.amplitudes[1]) == doctest::Approx(0.0));
  const TraceResult tb1 = half_partial_trace(built.net, built.layout, 3, fixed_a);
  CHECK(std::abs(tb1.amplitudes[1]) > 0.0);  // b1 = 1
  CHECK(std::abs(tb1.amplitudes[0]) == doctest::Approx(0.0));
}

TEST_CASE("scale invariance of trace decisions") {
  BuildContext ctx;
  ctx.tau = 1.0;
  QuboSpec qubo{{{-3.0, 0.0}, {3.0, -1.0}}};
  BuiltProblem built = build_quadratic(qubo, ctx);

  TraceOptions opts;
  const TraceResult base = half_partial_trace(built.net, built.layout, 0, opts);
  const std::size_t base_arg =
      std::abs(base.amplitudes[0]) >= std::abs(base.amplitudes[1]) ? 0 : 1;

  // Scaling any single node must not move the argmax.
  for (NodeId id : built.net.node_ids()) {
    BuiltProblem scaled = built;
    scaled.net.mutable_node(id) = scale(scaled.net.node(id), 17.0);
    const TraceResult t = half_partial_trace(scaled.net, scaled.layout, 0, opts);
    const std::size_t arg =
        std::abs(t.amplitudes[0]) >= std::abs(t.amplitudes[1]) ? 0 : 1;
    CHECK(arg == base_arg);
  }
}

TEST_CASE("network text export") {
  TensorNetwork net;
  const NodeId a = net.add_node(make_plus(2));
  const NodeId b = net.add_node(make_delta(2, 2));
  net.add_bond({a, 0}, {b, 0});
  net.mark_open("x", {b, 1});
  std::stringstream expect;
  expect << "node 0 dims=2\n"
         << "node 1 dims=2,2\n"
         << "bond 0.0 1.0\n"
         << "open x 1.1\n";
  CHECK(net.export_text() == expect.str());
}
