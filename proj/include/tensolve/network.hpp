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
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tensolve/tensor.hpp"

namespace tensolve {

using NodeId = int;

struct LegRef {
  NodeId node = -1;
  int slot = -1;
  bool operator==(const LegRef&) const = default;
  auto operator<=>(const LegRef&) const = default;
};

/// Tensor network: nodes hold sparse tensors, every slot of every node is
/// either part of exactly one bond or declared as one labelled open leg.
class TensorNetwork {
 public:
  NodeId add_node(SparseTensor t);
  void add_bond(LegRef a, LegRef b);
  void mark_open(const std::string& label, LegRef leg);

  std::size_t node_count() const { return nodes_.size(); }
  const SparseTensor& node(NodeId id) const;
  SparseTensor& mutable_node(NodeId id);
  const std::vector<std::pair<LegRef, LegRef>>& bonds() const { return bonds_; }
  const std::vector<std::pair<std::string, LegRef>>& open_legs() const {
    return open_legs_;
  }
  std::optional<LegRef> open_leg(const std::string& label) const;
  std::vector<NodeId> node_ids() const;

  // Checks the wiring invariants; throws InvalidArgument on violation.
  void validate() const;

  // One line per node, bond and open leg; stable order for diffing.
  std::string export_text() const;

 private:
  std::map<NodeId, SparseTensor> nodes_;
  std::vector<std::pair<LegRef, LegRef>> bonds_;
  std::vector<std::pair<std::string, LegRef>> open_legs_;
  NodeId next_id_ = 0;
};

struct ContractionStep {
  NodeId a = -1;
  NodeId b = -1;
  int result_legs = 0;
  double log_volume = 0.0;  // natural log of the predicted dense volume
};

struct ContractionPlan {
  std::vector<ContractionStep> steps;
  double max_log_volume = 0.0;
};

// Greedy planner: merge the bonded pair minimizing the dense volume of the
// result; ties by fewer result legs, then lowest (min id, max id) pair. The
// merged node keeps the smaller id. Disconnected components are planned where
// bonds exist, then the survivors are folded with outer products.
ContractionPlan plan_contraction(const TensorNetwork& net);

// Random valid elimination order (for plan-independence tests).
ContractionPlan random_plan(const TensorNetwork& net, std::mt19937& rng);

struct ContractionResult {
  SparseTensor tensor;  // legs in open-leg declaration order
  double log_scale = 0.0;
  bool degenerate = false;  // all amplitudes vanished; log_scale is -inf
};

// Executes the plan with running max-normalization; log_scale accumulates the
// stripped magnitudes so amplitudes never under/overflow.
ContractionResult contract(const TensorNetwork& net, const ContractionPlan& plan);
ContractionResult contract(const TensorNetwork& net);

// Tropical contraction of a fully closed network (no open legs): returns the
// log of the largest single-state amplitude modulus, or -infinity when every
// state vanished.
double tropical_log_max(const TensorNetwork& net);

// Returns a copy of the network with the labelled open leg closed by the
// given 1-leg vector.
TensorNetwork attach_boundary(const TensorNetwork& net, const std::string& label,
                              const SparseTensor& vector);

enum class TraceMode { kPlus, kPhase };

struct VariableLayout {
  enum class Extract { kArgMax, kLowestNonzero };
  struct Variable {
    std::string label;       // also the open-leg label
    std::int64_t dim = 0;
    Extract rule = Extract::kArgMax;
  };
  std::vector<Variable> variables;

  std::size_t index_of(const std::string& label) const;
};

struct TraceResult {
  std::vector<Amplitude> amplitudes;  // max-normalized
  double log_scale = 0.0;
  bool degenerate = false;
};

struct TraceOptions {
  TraceMode mode = TraceMode::kPlus;
  // Fixed variables closed with projection vectors: variable index -> value.
  std::map<std::size_t, std::int64_t> fixed;
  // Optional per-variable boundary override (e.g. masked superpositions);
  // applies to non-target, non-fixed variables.
  const std::map<std::size_t, SparseTensor>* overrides = nullptr;
};

// Closes every variable leg except `target` (projections on fixed variables,
// plus/phase vectors elsewhere) and contracts down to the target's amplitude
// vector.
TraceResult half_partial_trace(const TensorNetwork& net, const VariableLayout& layout,
                               std::size_t target, const TraceOptions& options);

}  // namespace tensolve
