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

#include <functional>
#include <string>

#include "tensolve/builders.hpp"

namespace tensolve::detail {

// Diagonal 2-leg tensor (v, v) -> amp(v); entries with amp(v) == nullopt are
// filtered out.
SparseTensor diag_amp(std::int64_t dim,
                      const std::function<std::optional<Amplitude>(std::int64_t)>& amp);

std::string var_label(std::size_t k);

// One variable wire: an open leg plus the dangling continuation slot.
struct Wire {
  std::string label;
  LegRef head;  // becomes the open variable leg
  LegRef tail;  // dangling output, to be extended or terminated
};

// Appends `t` to a wire: bonds wire.tail to slot `in` and moves the tail to
// slot `out`. Returns the new node id.
NodeId extend_wire(TensorNetwork& net, Wire& wire, SparseTensor t, int in, int out);

// Terminates the wire with a plus vector (the allow-any-output cap).
void cap_plus(TensorNetwork& net, Wire& wire, std::int64_t dim);

// Starts a wire from a diagonal amplitude tensor; the in slot is the open
// variable leg.
Wire start_wire(TensorNetwork& net, const std::string& label, SparseTensor first,
                int in, int out);

// Registers all wires' head legs as open legs, in wire order, and builds the
// matching layout.
VariableLayout finish_layout(TensorNetwork& net, std::vector<Wire>& wires,
                             const std::vector<std::int64_t>& dims);

// Quadratic/higher-order chain emission shared by the unconstrained builders
// and the integer programs. Emits one wire per variable whose tail is left
// dangling for the caller (cap with plus, or feed a constraint grid).
struct InteractionTerm {
  std::vector<int> vars;  // strictly decreasing, at least 2 entries
  // amplitude for the tuple of values, ordered like vars
  std::function<Amplitude(const std::vector<std::int64_t>&)> amp;
};

std::vector<Wire> emit_interaction_chains(
    TensorNetwork& net, const std::vector<std::int64_t>& dims,
    const std::vector<InteractionTerm>& terms,
    const std::function<Amplitude(std::size_t, std::int64_t)>& diag);

// Validates the wiring and max-normalizes every node tensor, accumulating the
// stripped magnitudes into log_offset. Every builder returns through here.
BuiltProblem finalize_build(BuiltProblem out);

}  // namespace tensolve::detail
