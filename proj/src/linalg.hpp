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

// Dense row-major matrix products, routed through CBLAS when the build
// found it and through plain loops otherwise. Only the two shapes the
// codec and quantizer actually need are exposed.

#ifndef SGEQ_SRC_LINALG_HPP_
#define SGEQ_SRC_LINALG_HPP_

#include <cstddef>

namespace sgeq::detail {

// out = a * b^T, with a: m x k, b: n x k, out: m x n, all row-major.
void matmul_nt(const double* a, const double* b, double* out, std::size_t m,
               std::size_t n, std::size_t k);

// out = a * b, with a: m x k, b: k x n, out: m x n, all row-major.
void matmul_nn(const double* a, const double* b, double* out, std::size_t m,
               std::size_t n, std::size_t k);

}  // namespace sgeq::detail

#endif  // SGEQ_SRC_LINALG_HPP_
