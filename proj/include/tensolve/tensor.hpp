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

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensolve {

using Amplitude = std::complex<double>;

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when an all-zero tensor reaches normalization; callers treat it as
// an infeasibility signal.
struct DegenerateTensor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse tensor over complex amplitudes. Entries are kept in canonical form:
/// sorted by linearized multi-index, duplicates merged, moduli below
/// kZeroTolerance dropped. Tensors are value types and immutable once built
/// (add() is only legal before the final canonicalize()).
class SparseTensor {
 public:
  // Entries with modulus below this are dropped during canonicalization.
  // Exact 0/1 logic tensors never need it; it guards round-off in
  // exponential-weighted networks.
  static constexpr double kZeroTolerance = 1e-12;

  SparseTensor() = default;
  explicit SparseTensor(std::vector<std::int64_t> dims);

  std::size_t rank() const { return dims_.size(); }
  std::int64_t dim(std::size_t leg) const { return dims_[leg]; }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::size_t nnz() const { return keys_.size(); }
  bool canonical() const { return !dirty_; }

  // Dense volume (product of extents); rank-0 tensors have volume 1.
  std::uint64_t volume() const { return volume_; }

  // Accumulates amp at the given multi-index. Entries may repeat; repeated
  // indices sum during canonicalize().
  void add(std::span<const std::int64_t> idx, Amplitude amp);
  void add(std::initializer_list<std::int64_t> idx, Amplitude amp);

  // Sorts, merges duplicates and drops sub-tolerance entries.
  SparseTensor& canonicalize();

  Amplitude at(std::span<const std::int64_t> idx) const;
  Amplitude at(std::initializer_list<std::int64_t> idx) const;

  // Scalar value of a rank-0 tensor.
  Amplitude scalar() const;

  // Entry access for iteration (canonical order).
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  Amplitude amplitude(std::size_t i) const { return {re_[i], im_[i]}; }
  std::vector<std::int64_t> unpack(std::uint64_t key) const;

  const std::vector<std::uint64_t>& keys() const { return keys_; }
  const std::vector<double>& re() const { return re_; }
  const std::vector<double>& im() const { return im_; }

  double max_modulus() const;

  SparseTensor transposed(std::span<const int> perm) const;

  bool operator==(const SparseTensor& other) const;

  std::string describe() const;

 private:
  friend SparseTensor contract_pair(const SparseTensor&, std::span<const int>,
                                    const SparseTensor&, std::span<const int>);
  friend SparseTensor contract_pair_max(const SparseTensor&, std::span<const int>,
                                        const SparseTensor&, std::span<const int>);
  friend SparseTensor scale(const SparseTensor&, Amplitude);
  friend std::pair<SparseTensor, double> normalize_max(const SparseTensor&);

  std::uint64_t pack(std::span<const std::int64_t> idx) const;

  std::vector<std::int64_t> dims_;
  std::vector<std::uint64_t> strides_;  // row-major
  std::uint64_t volume_ = 1;
  std::vector<std::uint64_t> keys_;
  std::vector<double> re_;
  std::vector<double> im_;
  bool dirty_ = false;
};

// ---- Elementary vectors and reusable tensors ----

// All-ones vector of the given extent.
SparseTensor make_plus(std::int64_t dim);

// The two-component vector (-1, 1).
SparseTensor make_minus();

// One-hot vector: single 1 at `value`.
SparseTensor make_projection(std::int64_t dim, std::int64_t value);

// Unit-modulus phases e^{2*pi*i*j/dim}.
SparseTensor make_phase(std::int64_t dim);

// Indicator of j <= bound (with H(0) = 0, so `bound` itself is accepted).
SparseTensor make_step(std::int64_t dim, std::int64_t bound);

// Kronecker delta: 1 exactly where all `arity` indices agree.
SparseTensor make_delta(int arity, std::int64_t dim);

// Tensor-train split of make_delta(n_legs, dim) into 3-leg deltas. Chain leg
// layout: first tensor (ext, ext, chain), middles (chain, ext, chain), last
// (chain, ext, ext).
std::vector<SparseTensor> delta_chain(int n_legs, std::int64_t dim);

// 4-leg wire crossing: (i, j, mu, nu) nonzero iff mu == i and nu == j.
SparseTensor make_pass(std::int64_t dim_a, std::int64_t dim_b);

// Pairwise contraction: sums over the matched legs of products of amplitudes.
// Result legs are t1's unmatched legs (in order) followed by t2's.
SparseTensor contract_pair(const SparseTensor& t1, std::span<const int> legs1,
                           const SparseTensor& t2, std::span<const int> legs2);
SparseTensor contract_pair(const SparseTensor& t1, std::initializer_list<int> legs1,
                           const SparseTensor& t2, std::initializer_list<int> legs2);

// Tropical variant: max instead of sum, over moduli of products. Contracting
// a whole network this way yields the largest single-state amplitude, which
// certifies optimality of a projected assignment.
SparseTensor contract_pair_max(const SparseTensor& t1, std::span<const int> legs1,
                               const SparseTensor& t2, std::span<const int> legs2);

SparseTensor scale(const SparseTensor& t, Amplitude factor);

// Divides by the entry of maximum modulus and returns the natural log of that
// modulus. Throws DegenerateTensor on an all-zero tensor.
std::pair<SparseTensor, double> normalize_max(const SparseTensor& t);

}  // namespace tensolve
