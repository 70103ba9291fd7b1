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

#ifndef SGEQ_GAINQUANT_HPP_
#define SGEQ_GAINQUANT_HPP_

#include <cstdint>

namespace sgeq {

// Companded uniform scalar quantizer for the frame gains. The compander
// is the classic mu-law curve; codes are uniform in the companded
// domain. full_scale maps the top of the linear range onto compander
// input 1.0; gains above it clip to the top code.
struct GainQuantConfig {
  double mu = 255.0;
  int bits = 8;
  double full_scale = 1.0;
};

// Throws ConfigError unless mu > 0, 1 <= bits <= 16, full_scale > 0.
void validate(const GainQuantConfig& cfg);

// y = sgn(x) * ln(1 + mu*|x|) / ln(1 + mu). Odd, strictly increasing,
// maps [-1,1] onto [-1,1]. Throws ArgumentError when |x| > 1.
double mu_compress(double x, double mu);

// Exact inverse of mu_compress. Throws ArgumentError when |y| > 1.
double mu_expand(double y, double mu);

// code = round(F(min(g/full_scale, 1)) * (2^bits - 1)).
// Throws ArgumentError when g < 0.
std::uint32_t quantize_gain(double g, const GainQuantConfig& cfg);

// ghat = full_scale * F^{-1}(code / (2^bits - 1)).
// Throws ArgumentError when code >= 2^bits.
double dequantize_gain(std::uint32_t code, const GainQuantConfig& cfg);

}  // namespace sgeq

#endif  // SGEQ_GAINQUANT_HPP_
