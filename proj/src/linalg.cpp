// Copyright 2026 The sgeq Authors.
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

#include "linalg.hpp"

#ifdef SGEQ_USE_CBLAS
#include <cblas.h>
#endif

namespace sgeq::detail {

#ifdef SGEQ_USE_CBLAS

void matmul_nt(const double* a, const double* b, double* out, std::size_t m,
               std::size_t n, std::size_t k) {
  if (m == 0 || n == 0) return;
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(m),
              static_cast<int>(n), static_cast<int>(k), 1.0, a,
              static_cast<int>(k), b, static_cast<int>(k), 0.0, out,
              static_cast<int>(n));
}

void matmul_nn(const double* a, const double* b, double* out, std::size_t m,
               std::size_t n, std::size_t k) {
  if (m == 0 || n == 0) return;
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(m),
              static_cast<int>(n), static_cast<int>(k), 1.0, a,
              static_cast<int>(k), b, static_cast<int>(n), 0.0, out,
              static_cast<int>(n));
}

#else

void matmul_nt(const double* a, const double* b, double* out, std::size_t m,
               std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const double* bj = b + j * k;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        acc += ai[p] * bj[p];
      }
      out[i * n + j] = acc;
    }
  }
}

void matmul_nn(const double* a, const double* b, double* out, std::size_t m,
               std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    double* oi = out + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      oi[j] = 0.0;
    }
    const double* ai = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      const double* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        oi[j] += aip * bp[j];
      }
    }
  }
}

#endif

}  // namespace sgeq::detail
