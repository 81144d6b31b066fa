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

#include "tensolve/kernels.hpp"

namespace tensolve::kernels {

namespace scalar {

double max_abs2(const double* re, const double* im, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = re[i] * re[i] + im[i] * im[i];
    if (m > best) best = m;
  }
  return best;
}

void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = re[i] * fre - im[i] * fim;
    const double s = re[i] * fim + im[i] * fre;
    re[i] = r;
    im[i] = s;
  }
}

void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim) {
  for (std::size_t i = 0; i < n; ++i) {
    ore[i] = lre * re[i] - lim * im[i];
    oim[i] = lre * im[i] + lim * re[i];
  }
}

}  // namespace scalar

namespace {

Backend pick_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2::supported()) return Backend::kAvx2;
#endif
#if defined(__aarch64__)
  if (neon::supported()) return Backend::kNeon;
#endif
  return Backend::kScalar;
}

const Backend g_backend = pick_backend();

}  // namespace

Backend active_backend() { return g_backend; }

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
    case Backend::kScalar: break;
  }
  return "scalar";
}

double max_abs2(const double* re, const double* im, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::kAvx2) return avx2::max_abs2(re, im, n);
#endif
#if defined(__aarch64__)
  if (g_backend == Backend::kNeon) return neon::max_abs2(re, im, n);
#endif
  return scalar::max_abs2(re, im, n);
}

void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::kAvx2) return avx2::scale_inplace(re, im, n, fre, fim);
#endif
#if defined(__aarch64__)
  if (g_backend == Backend::kNeon) return neon::scale_inplace(re, im, n, fre, fim);
#endif
  return scalar::scale_inplace(re, im, n, fre, fim);
}

void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::kAvx2) return avx2::mul_scalar(re, im, n, lre, lim, ore, oim);
#endif
#if defined(__aarch64__)
  if (g_backend == Backend::kNeon) return neon::mul_scalar(re, im, n, lre, lim, ore, oim);
#endif
  return scalar::mul_scalar(re, im, n, lre, lim, ore, oim);
}

}  // namespace tensolve::kernels
