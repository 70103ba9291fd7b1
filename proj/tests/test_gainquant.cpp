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

#include <cmath>
#include <cstdint>
#include <random>

#include "doctest.h"
#include "sgeq/error.hpp"
#include "sgeq/gainquant.hpp"

namespace {

sgeq::GainQuantConfig config(double mu = 255.0, int bits = 8,
                             double full_scale = 1.0) {
  sgeq::GainQuantConfig cfg;
  cfg.mu = mu;
  cfg.bits = bits;
  cfg.full_scale = full_scale;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("gainquant");

TEST_CASE("config validation rejects out-of-range fields") {
  CHECK_NOTHROW(sgeq::validate(config()));
  CHECK_NOTHROW(sgeq::validate(config(255.0, 1)));
  CHECK_NOTHROW(sgeq::validate(config(255.0, 16)));
  CHECK_THROWS_AS(sgeq::validate(config(0.0)), sgeq::ConfigError);
  CHECK_THROWS_AS(sgeq::validate(config(-1.0)), sgeq::ConfigError);
  CHECK_THROWS_AS(sgeq::validate(config(255.0, 0)), sgeq::ConfigError);
  CHECK_THROWS_AS(sgeq::validate(config(255.0, 17)), sgeq::ConfigError);
  CHECK_THROWS_AS(sgeq::validate(config(255.0, 8, 0.0)), sgeq::ConfigError);
  CHECK_THROWS_AS(sgeq::validate(config(255.0, 8, -2.0)), sgeq::ConfigError);
}

TEST_CASE("compander matches reference values at mu=255") {
  // Reference values computed with 40-digit arithmetic from
  // ln(1 + mu x) / ln(1 + mu).
  CHECK(sgeq::mu_compress(0.1, 255.0) ==
        doctest::Approx(0.59099005682039989741).epsilon(1e-14));
  CHECK(sgeq::mu_compress(0.5, 255.0) ==
        doctest::Approx(0.87570306864923476336).epsilon(1e-14));
  CHECK(sgeq::mu_compress(0.01, 255.0) ==
        doctest::Approx(0.22847737807716496419).epsilon(1e-14));
  CHECK(sgeq::mu_compress(0.0, 255.0) == 0.0);
  CHECK(sgeq::mu_compress(1.0, 255.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sgeq::mu_expand(0.5, 255.0) ==
        doctest::Approx(0.058823529411764705882).epsilon(1e-14));
}

TEST_CASE("compander is odd and monotone") {
  for (double x : {0.001, 0.02, 0.3, 0.77, 1.0}) {
    CHECK(sgeq::mu_compress(-x, 255.0) == -sgeq::mu_compress(x, 255.0));
  }
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double y = sgeq::mu_compress(-1.0 + i / 100.0, 255.0);
    CHECK(y >= prev);
    prev = y;
  }
}

TEST_CASE("compander and expander are mutual inverses") {
  for (double mu : {1.0, 100.0, 255.0, 1000.0}) {
    for (int i = 0; i <= 1000; ++i) {
      const double x = -1.0 + 2.0 * i / 1000.0;
      CHECK(std::abs(sgeq::mu_expand(sgeq::mu_compress(x, mu), mu) - x) <=
            1e-12);
    }
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = dist(rng);
    CHECK(std::abs(sgeq::mu_compress(sgeq::mu_expand(y, 255.0), 255.0) - y) <=
          1e-12);
  }
}

TEST_CASE("compander rejects arguments outside the unit interval") {
  CHECK_THROWS_AS(sgeq::mu_compress(1.0000001, 255.0), sgeq::ArgumentError);
  CHECK_THROWS_AS(sgeq::mu_compress(-1.5, 255.0), sgeq::ArgumentError);
  CHECK_THROWS_AS(sgeq::mu_expand(1.1, 255.0), sgeq::ArgumentError);
  CHECK_THROWS_AS(sgeq::mu_expand(-2.0, 255.0), sgeq::ArgumentError);
}

TEST_CASE("gain codes match the companded uniform grid") {
  const sgeq::GainQuantConfig cfg = config();
  // F(0.1) * 255 = 150.702..., rounding to code 151; decoding lands at
  // 0.10067456763296087 (reference values at 40 digits).
  CHECK(sgeq::quantize_gain(0.1, cfg) == 151);
  CHECK(sgeq::dequantize_gain(151, cfg) ==
        doctest::Approx(0.10067456763296087344).epsilon(1e-13));

  CHECK(sgeq::quantize_gain(0.0, cfg) == 0);
  CHECK(sgeq::dequantize_gain(0, cfg) == 0.0);
  CHECK(sgeq::quantize_gain(1.0, cfg) == 255);
  CHECK(sgeq::dequantize_gain(255, cfg) == doctest::Approx(1.0).epsilon(1e-13));

  // Gains above full scale clip to the top code.
  CHECK(sgeq::quantize_gain(7.5, cfg) == 255);

  // full_scale only rescales the input axis.
  CHECK(sgeq::quantize_gain(2.0, config(255.0, 8, 20.0)) == 151);

  CHECK_THROWS_AS(sgeq::quantize_gain(-0.01, cfg), sgeq::ArgumentError);
  CHECK_THROWS_AS(sgeq::dequantize_gain(256, cfg), sgeq::ArgumentError);
}

TEST_CASE("gain codes are monotone in the gain") {
  const sgeq::GainQuantConfig cfg = config();
  std::uint32_t prev = 0;
  for (int i = 0; i <= 500; ++i) {
    const std::uint32_t code = sgeq::quantize_gain(i / 500.0, cfg);
    CHECK(code >= prev);
    prev = code;
  }
  CHECK(prev == 255);
}

TEST_CASE("quantizing a decoded gain is idempotent") {
  const sgeq::GainQuantConfig cfg = config();
  for (std::uint32_t code = 0; code < 256; ++code) {
    const double g = sgeq::dequantize_gain(code, cfg);
    CHECK(sgeq::quantize_gain(g, cfg) == code);
  }
}

TEST_SUITE_END();
