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

#include "sgeq/gainquant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgeq/error.hpp"

namespace sgeq {

void validate(const GainQuantConfig& cfg) {
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) {
    throw ConfigError("gain quantizer: mu must be finite and positive, got " +
                      std::to_string(cfg.mu));
  }
  if (cfg.bits < 1 || cfg.bits > 16) {
    throw ConfigError("gain quantizer: bits must be in [1,16], got " +
                      std::to_string(cfg.bits));
  }
  if (!(cfg.full_scale > 0.0) || !std::isfinite(cfg.full_scale)) {
    throw ConfigError(
        "gain quantizer: full_scale must be finite and positive, got " +
        std::to_string(cfg.full_scale));
  }
}

double mu_compress(double x, double mu) {
  if (!(std::fabs(x) <= 1.0)) {
    throw ArgumentError("mu_compress: input " + std::to_string(x) +
                        " outside [-1,1]");
  }
  // log1p keeps precision near zero, where the curve is steepest.
  const double mag = std::log1p(mu * std::fabs(x)) / std::log1p(mu);
  return std::copysign(mag, x);
}

double mu_expand(double y, double mu) {
  if (!(std::fabs(y) <= 1.0)) {
    throw ArgumentError("mu_expand: input " + std::to_string(y) +
                        " outside [-1,1]");
  }
  const double mag = std::expm1(std::fabs(y) * std::log1p(mu)) / mu;
  return std::copysign(mag, y);
}

std::uint32_t quantize_gain(double g, const GainQuantConfig& cfg) {
  validate(cfg);
  if (!(g >= 0.0)) {
    throw ArgumentError("quantize_gain: negative gain " + std::to_string(g));
  }
  const double levels = static_cast<double>((1u << cfg.bits) - 1u);
  const double x = std::min(g / cfg.full_scale, 1.0);
  const double y = mu_compress(x, cfg.mu);
  return static_cast<std::uint32_t>(std::lround(y * levels));
}

double dequantize_gain(std::uint32_t code, const GainQuantConfig& cfg) {
  validate(cfg);
  const std::uint32_t levels = (1u << cfg.bits) - 1u;
  if (code > levels) {
    throw ArgumentError("dequantize_gain: code " + std::to_string(code) +
                        " exceeds top level " + std::to_string(levels));
  }
  const double y = static_cast<double>(code) / static_cast<double>(levels);
  return cfg.full_scale * mu_expand(y, cfg.mu);
}

}  // namespace sgeq
