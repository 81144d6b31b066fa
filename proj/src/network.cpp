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

#include "tensolve/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace tensolve {

NodeId TensorNetwork::add_node(SparseTensor t) {
  if (!t.canonical()) throw InvalidArgument("network nodes must be canonical tensors");
  const NodeId id = next_id_++;
  nodes_.emplace(id, std::move(t));
  return id;
}

void TensorNetwork::add_bond(LegRef a, LegRef b) {
  if (a.node == b.node) throw InvalidArgument("self-bonds are not supported");
  bonds_.emplace_back(a, b);
}

void TensorNetwork::mark_open(const std::string& label, LegRef leg) {
  for (const auto& [l, ref] : open_legs_)
    if (l == label) throw InvalidArgument("duplicate open-leg label: " + label);
  open_legs_.emplace_back(label, leg);
}

const SparseTensor& TensorNetwork::node(NodeId id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) throw InvalidArgument("unknown node id");
  return it->second;
}

SparseTensor& TensorNetwork::mutable_node(NodeId id) {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) throw InvalidArgument("unknown node id");
  return it->second;
}

std::optional<LegRef> TensorNetwork::open_leg(const std::string& label) const {
  for (const auto& [l, ref] : open_legs_)
    if (l == label) return ref;
  return std::nullopt;
}

std::vector<NodeId> TensorNetwork::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, t] : nodes_) ids.push_back(id);
  return ids;
}

void TensorNetwork::validate() const {
  std::set<std::pair<NodeId, int>> used;
  auto claim = [&](LegRef ref, const char* what) {
    const auto it = nodes_.find(ref.node);
    if (it == nodes_.end())
      throw InvalidArgument(std::string(what) + " references unknown node");
    if (ref.slot < 0 || static_cast<std::size_t>(ref.slot) >= it->second.rank())
      throw InvalidArgument(std::string(what) + " references slot out of range");
    if (!used.emplace(ref.node, ref.slot).second)
      throw InvalidArgument("slot used more than once");
  };
  for (const auto& [a, b] : bonds_) {
    claim(a, "bond");
    claim(b, "bond");
    if (node(a.node).dim(static_cast<std::size_t>(a.slot)) !=
        node(b.node).dim(static_cast<std::size_t>(b.slot)))
      throw InvalidArgument("bonded slots have different extents");
  }
  for (const auto& [label, ref] : open_legs_) claim(ref, "open leg");
  std::size_t total_slots = 0;
  for (const auto& [id, t] : nodes_) total_slots += t.rank();
  if (used.size() != total_slots)
    throw InvalidArgument("network has unwired slots");
}

std::string TensorNetwork::export_text() const {
  std::ostringstream os;
  for (const auto& [id, t] : nodes_) {
    os << "node " << id << " dims=";
    for (std::size_t i = 0; i < t.rank(); ++i) os << (i ? "," : "") << t.dim(i);
    if (t.rank() == 0) os << "-";
    os << "\n";
  }
  for (const auto& [a, b] : bonds_)
    os << "bond " << a.node << "." << a.slot << " " << b.node << "." << b.slot << "\n";
  for (const auto& [label, ref] : open_legs_)
    os << "open " << label << " " << ref.node << "." << ref.slot << "\n";
  return os.str();
}

// ---- planning & contraction ----

namespace {

struct SlotInfo {
  bool bonded = false;
  LegRef peer;        // when bonded
  std::string label;  // when open
  std::int64_t dim = 0;
};

struct ExecNode {
  std::vector<SlotInfo> slots;
};

using ExecState = std::map<NodeId, ExecNode>;

ExecState build_state(const TensorNetwork& net) {
  ExecState state;
  for (NodeId id : net.node_ids()) {
    ExecNode n;
    n.slots.resize(net.node(id).rank());
    for (std::size_t s = 0; s < n.slots.size(); ++s)
      n.slots[s].dim = net.node(id).dim(s);
    state.emplace(id, std::move(n));
  }
  for (const auto& [a, b] : net.bonds()) {
    state[a.node].slots[static_cast<std::size_t>(a.slot)] = {
        true, b, "", net.node(a.node).dim(static_cast<std::size_t>(a.slot))};
    state[b.node].slots[static_cast<std::size_t>(b.slot)] = {
        true, a, "", net.node(b.node).dim(static_cast<std::size_t>(b.slot))};
  }
  for (const auto& [label, ref] : net.open_legs()) {
    auto& slot = state[ref.node].slots[static_cast<std::size_t>(ref.slot)];
    slot.bonded = false;
    slot.label = label;
  }
  return state;
}

// Applies the merge to the bookkeeping state and returns (legs1, legs2,
// result leg count, result log-volume).
struct MergeInfo {
  std::vector<int> legs1, legs2;
  int result_legs = 0;
  double log_volume = 0.0;
};

MergeInfo peek_merge(const ExecState& state, NodeId a, NodeId b) {
  MergeInfo info;
  const ExecNode& na = state.at(a);
  const ExecNode& nb = state.at(b);
  for (std::size_t s = 0; s < na.slots.size(); ++s) {
    const SlotInfo& si = na.slots[s];
    if (si.bonded && si.peer.node == b) {
      info.legs1.push_back(static_cast<int>(s));
      info.legs2.push_back(si.peer.slot);
    }
  }
  double lv = 0.0;
  int legs = 0;
  std::set<int> matched2(info.legs2.begin(), info.legs2.end());
  for (std::size_t s = 0; s < na.slots.size(); ++s) {
    if (na.slots[s].bonded && na.slots[s].peer.node == b) continue;
    lv += std::log(static_cast<double>(na.slots[s].dim));
    ++legs;
  }
  for (std::size_t s = 0; s < nb.slots.size(); ++s) {
    if (matched2.count(static_cast<int>(s))) continue;
    lv += std::log(static_cast<double>(nb.slots[s].dim));
    ++legs;
  }
  info.result_legs = legs;
  info.log_volume = lv;
  return info;
}

void apply_merge(ExecState& state, NodeId a, NodeId b, const MergeInfo& info) {
  const NodeId keep = std::min(a, b);
  ExecNode merged;
  std::set<int> matched1(info.legs1.begin(), info.legs1.end());
  std::set<int> matched2(info.legs2.begin(), info.legs2.end());
  auto take = [&](NodeId from, const std::set<int>& matched) {
    const ExecNode& n = state.at(from);
    for (std::size_t s = 0; s < n.slots.size(); ++s) {
      if (matched.count(static_cast<int>(s))) continue;
      merged.slots.push_back(n.slots[s]);
      const int new_slot = static_cast<int>(merged.slots.size()) - 1;
      const SlotInfo& si = n.slots[s];
      if (si.bonded)
        state.at(si.peer.node).slots[static_cast<std::size_t>(si.peer.slot)].peer = {
            keep, new_slot};
    }
  };
  take(a, matched1);
  take(b, matched2);
  state.erase(a);
  state.erase(b);
  state.emplace(keep, std::move(merged));
}

std::vector<std::pair<NodeId, NodeId>> bonded_pairs(const ExecState& state) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& [id, n] : state)
    for (const SlotInfo& s : n.slots)
      if (s.bonded) pairs.emplace(std::min(id, s.peer.node), std::max(id, s.peer.node));
  return {pairs.begin(), pairs.end()};
}

ContractionPlan plan_with_chooser(
    const TensorNetwork& net,
    const std::function<std::size_t(const std::vector<std::pair<NodeId, NodeId>>&,
                                    const std::vector<MergeInfo>&)>& choose) {
  ExecState state = build_state(net);
  ContractionPlan plan;
  while (true) {
    const auto pairs = bonded_pairs(state);
    if (pairs.empty()) break;
    std::vector<MergeInfo> infos;
    infos.reserve(pairs.size());
    for (const auto& [a, b] : pairs) infos.push_back(peek_merge(state, a, b));
    const std::size_t pick = choose(pairs, infos);
    const auto [a, b] = pairs[pick];
    plan.steps.push_back({a, b, infos[pick].result_legs, infos[pick].log_volume});
    plan.max_log_volume = std::max(plan.max_log_volume, infos[pick].log_volume);
    apply_merge(state, a, b, infos[pick]);
  }
  // Disconnected survivors fold with outer products, lowest ids first.
  std::vector<NodeId> rest;
  for (const auto& [id, n] : state) rest.push_back(id);
  std::sort(rest.begin(), rest.end());
  while (rest.size() > 1) {
    const NodeId a = rest[0], b = rest[1];
    const MergeInfo info = peek_merge(state, a, b);
    plan.steps.push_back({a, b, info.result_legs, info.log_volume});
    plan.max_log_volume = std::max(plan.max_log_volume, info.log_volume);
    apply_merge(state, a, b, info);
    rest.erase(rest.begin() + 1);
    rest[0] = std::min(a, b);
  }
  return plan;
}

}  // namespace

ContractionPlan plan_contraction(const TensorNetwork& net) {
  return plan_with_chooser(
      net, [](const std::vector<std::pair<NodeId, NodeId>>& pairs,
              const std::vector<MergeInfo>& infos) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pairs.size(); ++i) {
          const double dv = infos[i].log_volume - infos[best].log_volume;
          if (dv < -1e-12) {
            best = i;
          } else if (dv <= 1e-12) {
            if (infos[i].result_legs != infos[best].result_legs) {
              if (infos[i].result_legs < infos[best].result_legs) best = i;
            } else if (pairs[i] < pairs[best]) {
              best = i;
            }
          }
        }
        return best;
      });
}

ContractionPlan random_plan(const TensorNetwork& net, std::mt19937& rng) {
  return plan_with_chooser(
      net, [&rng](const std::vector<std::pair<NodeId, NodeId>>& pairs,
                  const std::vector<MergeInfo>&) {
        std::uniform_int_distribution<std::size_t> dist(0, pairs.size() - 1);
        return dist(rng);
      });
}

namespace {

using PairContraction = SparseTensor (*)(const SparseTensor&, std::span<const int>,
                                         const SparseTensor&, std::span<const int>);

ContractionResult contract_with(const TensorNetwork& net, const ContractionPlan& plan,
                                PairContraction merge_pair) {
  ExecState state = build_state(net);
  std::map<NodeId, SparseTensor> tensors;
  for (NodeId id : net.node_ids()) tensors.emplace(id, net.node(id));

  std::vector<std::int64_t> final_dims;
  for (const auto& [label, ref] : net.open_legs())
    final_dims.push_back(net.node(ref.node).dim(static_cast<std::size_t>(ref.slot)));

  double log_scale = 0.0;
  for (const ContractionStep& step : plan.steps) {
    const MergeInfo info = peek_merge(state, step.a, step.b);
    SparseTensor merged =
        merge_pair(tensors.at(step.a), info.legs1, tensors.at(step.b), info.legs2);
    tensors.erase(step.a);
    tensors.erase(step.b);
    if (merged.nnz() == 0) {
      return {SparseTensor(final_dims),
              -std::numeric_limits<double>::infinity(), true};
    }
    auto [normalized, log] = normalize_max(merged);
    log_scale += log;
    const NodeId keep = std::min(step.a, step.b);
    tensors.emplace(keep, std::move(normalized));
    apply_merge(state, step.a, step.b, info);
  }

  if (tensors.size() != 1)
    throw InvalidArgument("contraction plan does not reduce to one node");
  const NodeId last = tensors.begin()->first;
  SparseTensor result = std::move(tensors.begin()->second);

  // Reorder the surviving legs to open-leg declaration order.
  const ExecNode& n = state.at(last);
  std::vector<int> perm;
  perm.reserve(net.open_legs().size());
  for (const auto& [label, ref] : net.open_legs()) {
    int found = -1;
    for (std::size_t s = 0; s < n.slots.size(); ++s)
      if (!n.slots[s].bonded && n.slots[s].label == label) {
        found = static_cast<int>(s);
        break;
      }
    if (found < 0) throw InvalidArgument("open leg lost during contraction");
    perm.push_back(found);
  }
  if (perm.size() != result.rank())
    throw InvalidArgument("contraction left unexpected legs");
  result = result.transposed(perm);
  return {std::move(result), log_scale, false};
}

}  // namespace

ContractionResult contract(const TensorNetwork& net, const ContractionPlan& plan) {
  return contract_with(net, plan, &contract_pair);
}

ContractionResult contract(const TensorNetwork& net) {
  return contract(net, plan_contraction(net));
}

double tropical_log_max(const TensorNetwork& net) {
  if (!net.open_legs().empty())
    throw InvalidArgument("tropical contraction needs a fully closed network");
  const ContractionResult res =
      contract_with(net, plan_contraction(net), &contract_pair_max);
  if (res.degenerate) return -std::numeric_limits<double>::infinity();
  const double mod = std::abs(res.tensor.scalar());
  if (mod <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(mod) + res.log_scale;
}

TensorNetwork attach_boundary(const TensorNetwork& net, const std::string& label,
                              const SparseTensor& vector) {
  if (vector.rank() != 1) throw ShapeError("boundary vector must have one leg");
  const auto ref = net.open_leg(label);
  if (!ref) throw InvalidArgument("unknown open leg: " + label);
  if (vector.dim(0) != net.node(ref->node).dim(static_cast<std::size_t>(ref->slot)))
    throw ShapeError("boundary vector extent mismatch on " + label);

  TensorNetwork out;
  std::map<NodeId, NodeId> remap;
  for (NodeId id : net.node_ids()) remap[id] = out.add_node(net.node(id));
  for (const auto& [a, b] : net.bonds())
    out.add_bond({remap[a.node], a.slot}, {remap[b.node], b.slot});
  const NodeId vec_id = out.add_node(vector);
  for (const auto& [l, r] : net.open_legs()) {
    if (l == label)
      out.add_bond({remap[r.node], r.slot}, {vec_id, 0});
    else
      out.mark_open(l, {remap[r.node], r.slot});
  }
  return out;
}

std::size_t VariableLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].label == label) return i;
  throw InvalidArgument("unknown variable: " + label);
}

namespace {

// Unit-modulus trace phases, decorrelated across variables by a golden-ratio
// rotation. Evenly spaced roots of unity cancel *pairs of degenerate optima*
// exactly (two optimal binary strings an odd Hamming distance apart sum to
// zero under (1,-1) phases), which blinds the argmax at every tau; an
// irrational rotation keeps the suboptimal damping without that blind spot.
SparseTensor humbucker_vector(std::int64_t dim, std::size_t variable) {
  constexpr double kGolden = 0.6180339887498949;
  const double theta = std::fmod(static_cast<double>(variable + 1) * kGolden, 1.0);
  SparseTensor t({dim});
  for (std::int64_t j = 0; j < dim; ++j) {
    const double arg = 2.0 * std::numbers::pi * static_cast<double>(j) * theta;
    t.add({j}, {std::cos(arg), std::sin(arg)});
  }
  return t.canonicalize();
}

}  // namespace

TraceResult half_partial_trace(const TensorNetwork& net, const VariableLayout& layout,
                               std::size_t target, const TraceOptions& options) {
  if (target >= layout.variables.size())
    throw InvalidArgument("trace target out of range");
  if (options.fixed.count(target))
    throw InvalidArgument("trace target cannot be fixed");

  TensorNetwork closed = net;
  for (std::size_t k = 0; k < layout.variables.size(); ++k) {
    if (k == target) continue;
    const VariableLayout::Variable& var = layout.variables[k];
    const auto fixed_it = options.fixed.find(k);
    if (fixed_it != options.fixed.end()) {
      closed = attach_boundary(closed, var.label,
                               make_projection(var.dim, fixed_it->second));
      continue;
    }
    if (options.overrides) {
      const auto ov = options.overrides->find(k);
      if (ov != options.overrides->end()) {
        closed = attach_boundary(closed, var.label, ov->second);
        continue;
      }
    }
    closed = attach_boundary(closed, var.label,
                             options.mode == TraceMode::kPhase
                                 ? humbucker_vector(var.dim, k)
                                 : make_plus(var.dim));
  }

  const ContractionResult res = contract(closed);
  const std::int64_t dim = layout.variables[target].dim;
  TraceResult out;
  out.amplitudes.assign(static_cast<std::size_t>(dim), {0.0, 0.0});
  out.log_scale = res.log_scale;
  out.degenerate = res.degenerate;
  if (!res.degenerate) {
    for (std::int64_t v = 0; v < dim; ++v)
      out.amplitudes[static_cast<std::size_t>(v)] = res.tensor.at({v});
  }
  return out;
}

}  // namespace tensolve
