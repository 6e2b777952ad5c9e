// Copyright 2026 The TrustGate Authors
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
#include <span>
#include <string_view>

// Dense inner loops used by the classifiers. Each kernel has a portable
// scalar reference and vectorized variants; the active backend is picked
// once at startup from the CPU's capabilities and can be overridden with
// the TRUSTGATE_KERNELS environment variable (scalar | avx2 | neon).
namespace trustgate::ml::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view to_string(Backend backend);

/// Backends compiled into this binary and usable on this CPU.
bool supported(Backend backend);
Backend active_backend();

/// Not thread-safe; call before kernels are used concurrently.
/// Throws kConfig when `backend` is not supported.
void set_backend(Backend backend);
Backend parse_backend(std::string_view name);

/// sum_i a[i] * b[i]; a and b must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

/// y[i] += alpha * x[i]; x and y must have equal length.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace neon

}  // namespace trustgate::ml::kernels
