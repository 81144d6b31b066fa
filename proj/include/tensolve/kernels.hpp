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

#include <cstddef>
#include <string>

namespace tensolve::kernels {

// Split-complex array kernels used by the contraction engine. Amplitudes are
// stored as separate re/im arrays so these loops stay data-parallel.
//
// Every kernel has a scalar reference implementation and, where the build
// target supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The active
// variant is picked once at startup from CPU capabilities; all variants must
// produce bit-identical results on the same input (no reassociation of the
// reduction order beyond per-lane max, which is exact).

enum class Backend { kScalar, kAvx2, kNeon };

Backend active_backend();
std::string backend_name(Backend b);

// max over i of re[i]^2 + im[i]^2; 0 for n == 0.
double max_abs2(const double* re, const double* im, std::size_t n);

// (re[i], im[i]) *= (fre, fim) in place.
void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim);

// (ore[i], oim[i]) = (lre, lim) * (re[i], im[i]).
void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim);

// Reference implementations, exposed so tests can check the dispatched
// variant against them on the same inputs.
namespace scalar {
double max_abs2(const double* re, const double* im, std::size_t n);
void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim);
void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
double max_abs2(const double* re, const double* im, std::size_t n);
void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim);
void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
bool supported();
double max_abs2(const double* re, const double* im, std::size_t n);
void scale_inplace(double* re, double* im, std::size_t n, double fre, double fim);
void mul_scalar(const double* re, const double* im, std::size_t n, double lre,
                double lim, double* ore, double* oim);
}  // namespace neon
#endif

}  // namespace tensolve::kernels
