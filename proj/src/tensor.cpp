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

#include "tensolve/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tensolve/kernels.hpp"

namespace tensolve {

namespace {

constexpr double kZeroTol2 = SparseTensor::kZeroTolerance * SparseTensor::kZeroTolerance;

std::uint64_t checked_volume(const std::vector<std::int64_t>& dims) {
  std::uint64_t v = 1;
  for (std::int64_t d : dims) {
    if (d <= 0) throw InvalidArgument("tensor extent must be positive");
    const auto ud = static_cast<std::uint64_t>(d);
    if (v > std::numeric_limits<std::uint64_t>::max() / ud)
      throw InvalidArgument("tensor dense volume overflows 64 bits");
    v *= ud;
  }
  return v;
}

}  // namespace

SparseTensor::SparseTensor(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
  volume_ = checked_volume(dims_);
  strides_.assign(dims_.size(), 1);
  for (std::size_t i = dims_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * static_cast<std::uint64_t>(dims_[i]);
}

std::uint64_t SparseTensor::pack(std::span<const std::int64_t> idx) const {
  if (idx.size() != dims_.size()) throw ShapeError("multi-index rank mismatch");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= dims_[i]) throw ShapeError("multi-index out of range");
    key += static_cast<std::uint64_t>(idx[i]) * strides_[i];
  }
  return key;
}

std::vector<std::int64_t> SparseTensor::unpack(std::uint64_t key) const {
  std::vector<std::int64_t> idx(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    idx[i] = static_cast<std::int64_t>(key / strides_[i]);
    key %= strides_[i];
  }
  return idx;
}

void SparseTensor::add(std::span<const std::int64_t> idx, Amplitude amp) {
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
    throw InvalidArgument("amplitude must be finite");
  keys_.push_back(pack(idx));
  re_.push_back(amp.real());
  im_.push_back(amp.imag());
  dirty_ = true;
}

void SparseTensor::add(std::initializer_list<std::int64_t> idx, Amplitude amp) {
  add(std::span<const std::int64_t>(idx.begin(), idx.size()), amp);
}

SparseTensor& SparseTensor::canonicalize() {
  std::vector<std::size_t> order(keys_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });

  std::vector<std::uint64_t> keys;
  std::vector<double> re, im;
  keys.reserve(keys_.size());
  re.reserve(keys_.size());
  im.reserve(keys_.size());
  std::size_t i = 0;
  while (i < order.size()) {
    const std::uint64_t k = keys_[order[i]];
    double sr = 0.0, si = 0.0;
    for (; i < order.size() && keys_[order[i]] == k; ++i) {
      sr += re_[order[i]];
      si += im_[order[i]];
    }
    if (sr * sr + si * si >= kZeroTol2) {
      keys.push_back(k);
      re.push_back(sr);
      im.push_back(si);
    }
  }
  keys_ = std::move(keys);
  re_ = std::move(re);
  im_ = std::move(im);
  dirty_ = false;
  return *this;
}

Amplitude SparseTensor::at(std::span<const std::int64_t> idx) const {
  if (dirty_) throw InvalidArgument("tensor not canonicalized");
  const std::uint64_t key = pack(idx);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return {0.0, 0.0};
  const std::size_t i = static_cast<std::size_t>(it - keys_.begin());
  return {re_[i], im_[i]};
}

Amplitude SparseTensor::at(std::initializer_list<std::int64_t> idx) const {
  return at(std::span<const std::int64_t>(idx.begin(), idx.size()));
}

Amplitude SparseTensor::scalar() const {
  if (rank() != 0) throw ShapeError("scalar() on tensor of nonzero rank");
  if (keys_.empty()) return {0.0, 0.0};
  return {re_[0], im_[0]};
}

double SparseTensor::max_modulus() const {
  return std::sqrt(kernels::max_abs2(re_.data(), im_.data(), re_.size()));
}

bool SparseTensor::operator==(const SparseTensor& other) const {
  return dims_ == other.dims_ && keys_ == other.keys_ && re_ == other.re_ &&
         im_ == other.im_;
}

SparseTensor SparseTensor::transposed(std::span<const int> perm) const {
  if (perm.size() != rank()) throw ShapeError("permutation rank mismatch");
  std::vector<bool> seen(rank(), false);
  std::vector<std::int64_t> dims(rank());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int p = perm[i];
    if (p < 0 || static_cast<std::size_t>(p) >= rank() || seen[p])
      throw ShapeError("invalid permutation");
    seen[p] = true;
    dims[i] = dims_[static_cast<std::size_t>(p)];
  }
  SparseTensor out(std::move(dims));
  std::vector<std::int64_t> src(rank()), dst(rank());
  for (std::size_t e = 0; e < keys_.size(); ++e) {
    src = unpack(keys_[e]);
    for (std::size_t i = 0; i < perm.size(); ++i) dst[i] = src[static_cast<std::size_t>(perm[i])];
    out.add(dst, {re_[e], im_[e]});
  }
  out.canonicalize();
  return out;
}

std::string SparseTensor::describe() const {
  std::ostringstream os;
  os << "tensor dims=[";
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << "] nnz=" << nnz();
  return os.str();
}

// ---- factories ----

SparseTensor make_plus(std::int64_t dim) {
  if (dim < 1) throw InvalidArgument("plus vector needs positive extent");
  SparseTensor t({dim});
  for (std::int64_t j = 0; j < dim; ++j) t.add({j}, 1.0);
  return t.canonicalize();
}

SparseTensor make_minus() {
  SparseTensor t({2});
  t.add({0}, -1.0);
  t.add({1}, 1.0);
  return t.canonicalize();
}

SparseTensor make_projection(std::int64_t dim, std::int64_t value) {
  if (dim < 1) throw InvalidArgument("projection vector needs positive extent");
  if (value < 0 || value >= dim)
    throw InvalidArgument("projection value out of range");
  SparseTensor t({dim});
  t.add({value}, 1.0);
  return t.canonicalize();
}

SparseTensor make_phase(std::int64_t dim) {
  if (dim < 1) throw InvalidArgument("phase vector needs positive extent");
  SparseTensor t({dim});
  for (std::int64_t j = 0; j < dim; ++j) {
    const double arg = 2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(dim);
    t.add({j}, {std::cos(arg), std::sin(arg)});
  }
  return t.canonicalize();
}

SparseTensor make_step(std::int64_t dim, std::int64_t bound) {
  if (dim < 1) throw InvalidArgument("step vector needs positive extent");
  SparseTensor t({dim});
  for (std::int64_t j = 0; j < dim && j <= bound; ++j) t.add({j}, 1.0);
  return t.canonicalize();
}

SparseTensor make_delta(int arity, std::int64_t dim) {
  if (arity < 1) throw InvalidArgument("delta arity must be >= 1");
  SparseTensor t(std::vector<std::int64_t>(static_cast<std::size_t>(arity), dim));
  std::vector<std::int64_t> idx(static_cast<std::size_t>(arity));
  for (std::int64_t v = 0; v < dim; ++v) {
    std::fill(idx.begin(), idx.end(), v);
    t.add(idx, 1.0);
  }
  return t.canonicalize();
}

std::vector<SparseTensor> delta_chain(int n_legs, std::int64_t dim) {
  if (n_legs < 3) throw InvalidArgument("delta chain needs at least 3 legs");
  std::vector<SparseTensor> out;
  out.reserve(static_cast<std::size_t>(n_legs - 2));
  for (int i = 0; i < n_legs - 2; ++i) out.push_back(make_delta(3, dim));
  return out;
}

SparseTensor make_pass(std::int64_t dim_a, std::int64_t dim_b) {
  SparseTensor t({dim_a, dim_b, dim_a, dim_b});
  for (std::int64_t i = 0; i < dim_a; ++i)
    for (std::int64_t j = 0; j < dim_b; ++j) t.add({i, j, i, j}, 1.0);
  return t.canonicalize();
}

// ---- contraction ----

namespace {

struct TaggedEntry {
  std::uint64_t mkey;
  std::uint64_t fkey;
  double re;
  double im;
};

// Splits each entry's multi-index into (matched key, free key). Matched key
// uses the order of `legs`; free key uses ascending original leg order.
std::vector<TaggedEntry> tag_entries(const SparseTensor& t, std::span<const int> legs,
                                     std::uint64_t* free_volume,
                                     std::vector<std::int64_t>* free_dims) {
  const std::size_t rank = t.rank();
  std::vector<bool> matched(rank, false);
  for (int l : legs) matched[static_cast<std::size_t>(l)] = true;

  std::vector<std::uint64_t> mstride(legs.size(), 1);
  for (std::size_t p = legs.size(); p-- > 1;)
    mstride[p - 1] =
        mstride[p] * static_cast<std::uint64_t>(t.dim(static_cast<std::size_t>(legs[p])));

  std::vector<std::uint64_t> fstride;
  std::vector<std::size_t> flegs;
  for (std::size_t i = 0; i < rank; ++i)
    if (!matched[i]) {
      flegs.push_back(i);
      free_dims->push_back(t.dim(i));
    }
  fstride.assign(flegs.size(), 1);
  for (std::size_t p = flegs.size(); p-- > 1;)
    fstride[p - 1] = fstride[p] * static_cast<std::uint64_t>(t.dim(flegs[p]));
  *free_volume = flegs.empty()
                     ? 1
                     : fstride[0] * static_cast<std::uint64_t>(t.dim(flegs[0]));

  std::vector<TaggedEntry> tagged(t.nnz());
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    const std::vector<std::int64_t> idx = t.unpack(t.key(e));
    std::uint64_t mk = 0, fk = 0;
    for (std::size_t p = 0; p < legs.size(); ++p)
      mk += static_cast<std::uint64_t>(idx[static_cast<std::size_t>(legs[p])]) * mstride[p];
    for (std::size_t p = 0; p < flegs.size(); ++p)
      fk += static_cast<std::uint64_t>(idx[flegs[p]]) * fstride[p];
    const Amplitude a = t.amplitude(e);
    tagged[e] = {mk, fk, a.real(), a.imag()};
  }
  std::sort(tagged.begin(), tagged.end(), [](const TaggedEntry& a, const TaggedEntry& b) {
    return a.mkey != b.mkey ? a.mkey < b.mkey : a.fkey < b.fkey;
  });
  return tagged;
}

void validate_legs(const SparseTensor& t, std::span<const int> legs, const char* side) {
  std::vector<bool> seen(t.rank(), false);
  for (int l : legs) {
    if (l < 0 || static_cast<std::size_t>(l) >= t.rank())
      throw ShapeError(std::string("contraction leg out of range on ") + side);
    if (seen[static_cast<std::size_t>(l)])
      throw InvalidArgument(std::string("duplicate contraction leg on ") + side);
    seen[static_cast<std::size_t>(l)] = true;
  }
}

}  // namespace

SparseTensor contract_pair(const SparseTensor& t1, std::span<const int> legs1,
                           const SparseTensor& t2, std::span<const int> legs2) {
  if (legs1.size() != legs2.size())
    throw ShapeError("contraction leg lists differ in length");
  if (!t1.canonical() || !t2.canonical())
    throw InvalidArgument("contract_pair requires canonical tensors");
  validate_legs(t1, legs1, "t1");
  validate_legs(t2, legs2, "t2");
  for (std::size_t p = 0; p < legs1.size(); ++p)
    if (t1.dim(static_cast<std::size_t>(legs1[p])) !=
        t2.dim(static_cast<std::size_t>(legs2[p])))
      throw ShapeError("contracted extents do not match");

  std::uint64_t fvol1 = 1, fvol2 = 1;
  std::vector<std::int64_t> rdims;
  auto a = tag_entries(t1, legs1, &fvol1, &rdims);
  auto b = tag_entries(t2, legs2, &fvol2, &rdims);

  SparseTensor out(rdims);

  // Sorted SoA per side so group ranges are contiguous arrays.
  std::vector<double> bre(b.size()), bim(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    bre[i] = b[i].re;
    bim[i] = b[i].im;
  }
  std::vector<double> pre, pim;

  std::unordered_map<std::uint64_t, std::pair<double, double>> acc;
  acc.reserve(a.size() + b.size());

  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia].mkey < b[ib].mkey) {
      ++ia;
      continue;
    }
    if (b[ib].mkey < a[ia].mkey) {
      ++ib;
      continue;
    }
    const std::uint64_t mk = a[ia].mkey;
    std::size_t ea = ia, eb = ib;
    while (ea < a.size() && a[ea].mkey == mk) ++ea;
    while (eb < b.size() && b[eb].mkey == mk) ++eb;
    const std::size_t blen = eb - ib;
    pre.resize(blen);
    pim.resize(blen);
    for (std::size_t i = ia; i < ea; ++i) {
      kernels::mul_scalar(bre.data() + ib, bim.data() + ib, blen, a[i].re, a[i].im,
                          pre.data(), pim.data());
      const std::uint64_t base = a[i].fkey * fvol2;
      for (std::size_t k = 0; k < blen; ++k) {
        auto& slot = acc[base + b[ib + k].fkey];
        slot.first += pre[k];
        slot.second += pim[k];
      }
    }
    ia = ea;
    ib = eb;
  }

  for (const auto& [key, val] : acc) {
    if (val.first * val.first + val.second * val.second < kZeroTol2) continue;
    out.keys_.push_back(key);
    out.re_.push_back(val.first);
    out.im_.push_back(val.second);
  }
  out.dirty_ = true;
  out.canonicalize();
  return out;
}

SparseTensor contract_pair(const SparseTensor& t1, std::initializer_list<int> legs1,
                           const SparseTensor& t2, std::initializer_list<int> legs2) {
  return contract_pair(t1, std::span<const int>(legs1.begin(), legs1.size()), t2,
                       std::span<const int>(legs2.begin(), legs2.size()));
}

SparseTensor contract_pair_max(const SparseTensor& t1, std::span<const int> legs1,
                               const SparseTensor& t2, std::span<const int> legs2) {
  if (legs1.size() != legs2.size())
    throw ShapeError("contraction leg lists differ in length");
  if (!t1.canonical() || !t2.canonical())
    throw InvalidArgument("contract_pair_max requires canonical tensors");
  validate_legs(t1, legs1, "t1");
  validate_legs(t2, legs2, "t2");
  for (std::size_t p = 0; p < legs1.size(); ++p)
    if (t1.dim(static_cast<std::size_t>(legs1[p])) !=
        t2.dim(static_cast<std::size_t>(legs2[p])))
      throw ShapeError("contracted extents do not match");

  std::uint64_t fvol1 = 1, fvol2 = 1;
  std::vector<std::int64_t> rdims;
  auto a = tag_entries(t1, legs1, &fvol1, &rdims);
  auto b = tag_entries(t2, legs2, &fvol2, &rdims);

  SparseTensor out(rdims);
  std::unordered_map<std::uint64_t, double> acc;
  acc.reserve(a.size() + b.size());

  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia].mkey < b[ib].mkey) {
      ++ia;
      continue;
    }
    if (b[ib].mkey < a[ia].mkey) {
      ++ib;
      continue;
    }
    const std::uint64_t mk = a[ia].mkey;
    std::size_t ea = ia, eb = ib;
    while (ea < a.size() && a[ea].mkey == mk) ++ea;
    while (eb < b.size() && b[eb].mkey == mk) ++eb;
    for (std::size_t i = ia; i < ea; ++i) {
      const double ma = std::sqrt(a[i].re * a[i].re + a[i].im * a[i].im);
      const std::uint64_t base = a[i].fkey * fvol2;
      for (std::size_t k = ib; k < eb; ++k) {
        const double mb = std::sqrt(b[k].re * b[k].re + b[k].im * b[k].im);
        auto& slot = acc[base + b[k].fkey];
        slot = std::max(slot, ma * mb);
      }
    }
    ia = ea;
    ib = eb;
  }

  for (const auto& [key, val] : acc) {
    if (val * val < kZeroTol2) continue;
    out.keys_.push_back(key);
    out.re_.push_back(val);
    out.im_.push_back(0.0);
  }
  out.dirty_ = true;
  out.canonicalize();
  return out;
}

SparseTensor scale(const SparseTensor& t, Amplitude factor) {
  SparseTensor out = t;
  kernels::scale_inplace(out.re_.data(), out.im_.data(), out.re_.size(),
                         factor.real(), factor.imag());
  out.dirty_ = true;
  out.canonicalize();
  return out;
}

std::pair<SparseTensor, double> normalize_max(const SparseTensor& t) {
  if (t.nnz() == 0)
    throw DegenerateTensor("normalize_max on all-zero tensor");
  const double m2 = kernels::max_abs2(t.re_.data(), t.im_.data(), t.re_.size());
  const double m = std::sqrt(m2);
  SparseTensor out = t;
  const double inv = 1.0 / m;
  kernels::scale_inplace(out.re_.data(), out.im_.data(), out.re_.size(), inv, 0.0);
  out.dirty_ = true;
  out.canonicalize();
  return {std::move(out), std::log(m)};
}

}  // namespace tensolve
