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

// AVX2 variants. This translation unit is compiled with -mavx2; callers must
// check avx2::supported() before dispatching here.

#include "tensolve/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace tensolve::kernels::avx2 {

bool supported() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

double max_abs2(const double* re, const double* im, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  __m256d best = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d s = _mm256_loadu_pd(im + i);
    const __m256d m = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(s, s));
    best = _mm256_max_pd(best, m);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] > out) out = lanes[k];
  for (std::size_t i = n4; i < n; ++i) {
    const double m = re[i] * re[i] + im[i] * im[i];
    if (m > out) out = m;
  }
  return out;
}

void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim) {
  const __m256d vfre = _mm256_set1_pd(fre);
  const __m256d vfim = _mm256_set1_pd(fim);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d s = _mm256_loadu_pd(im + i);
    const __m256d nr = _mm256_sub_pd(_mm256_mul_pd(r, vfre), _mm256_mul_pd(s, vfim));
    const __m256d ns = _mm256_add_pd(_mm256_mul_pd(r, vfim), _mm256_mul_pd(s, vfre));
    _mm256_storeu_pd(re + i, nr);
    _mm256_storeu_pd(im + i, ns);
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double r = re[i] * fre - im[i] * fim;
    const double s = re[i] * fim + im[i] * fre;
    re[i] = r;
    im[i] = s;
  }
}

void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim) {
  const __m256d vlre = _mm256_set1_pd(lre);
  const __m256d vlim = _mm256_set1_pd(lim);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d s = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(ore + i, _mm256_sub_pd(_mm256_mul_pd(vlre, r), _mm256_mul_pd(vlim, s)));
    _mm256_storeu_pd(oim + i, _mm256_add_pd(_mm256_mul_pd(vlre, s), _mm256_mul_pd(vlim, r)));
  }
  for (std::size_t i = n4; i < n; ++i) {
    ore[i] = lre * re[i] - lim * im[i];
    oim[i] = lre * im[i] + lim * re[i];
  }
}

}  // namespace tensolve::kernels::avx2

#endif  // x86-64
