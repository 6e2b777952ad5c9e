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

#include <cstdlib>
#include <string>

#include "trustgate/error.hpp"
#include "trustgate/ml/kernels.hpp"

namespace trustgate::ml::kernels {

namespace {

struct Table {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

Table table_for(Backend backend) {
  switch (backend) {
#if defined(TRUSTGATE_HAVE_AVX2)
    case Backend::kAvx2: return {backend, &avx2::dot, &avx2::axpy};
#endif
#if defined(TRUSTGATE_HAVE_NEON)
    case Backend::kNeon: return {backend, &neon::dot, &neon::axpy};
#endif
    default: return {Backend::kScalar, &scalar::dot, &scalar::axpy};
  }
}

Backend best_backend() {
  if (const char* env = std::getenv("TRUSTGATE_KERNELS"); env != nullptr && *env != '\0') {
    auto requested = parse_backend(env);
    if (supported(requested)) return requested;
  }
  if (supported(Backend::kAvx2)) return Backend::kAvx2;
  if (supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

Table& active() {
  static Table table = table_for(best_backend());
  return table;
}

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "neon") return Backend::kNeon;
  throw Error(ErrorCode::kConfig, "unknown kernel backend '" + std::string(name) + "'");
}

bool supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2:
#if defined(TRUSTGATE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(TRUSTGATE_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return active().backend; }

void set_backend(Backend backend) {
  if (!supported(backend)) {
    throw Error(ErrorCode::kConfig,
                "kernel backend " + std::string(to_string(backend)) + " unavailable on this CPU");
  }
  active() = table_for(backend);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace trustgate::ml::kernels
