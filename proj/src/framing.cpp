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

#include "sgeq/framing.hpp"

#include <cmath>
#include <string>

#include "sgeq/error.hpp"

namespace sgeq {

namespace {
constexpr double kProfileFloor = 1e-12;
}  // namespace

void validate(const WindowSpec& spec) {
  if (spec.kind != WindowKind::kKbd) {
    throw ConfigError("window: unsupported kind");
  }
  if (spec.length <= 0 || spec.length % 2 != 0) {
    throw ConfigError("window: length must be positive and even, got " +
                      std::to_string(spec.length));
  }
  if (spec.hop <= 0 || spec.hop > spec.length) {
    throw ConfigError("window: hop must be in [1, length], got " +
                      std::to_string(spec.hop));
  }
  if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta)) {
    throw ConfigError("window: beta must be finite and >= 0");
  }
}

std::vector<double> make_kbd_window(const WindowSpec& spec) {
  validate(spec);
  const int n = spec.length;
  const int half = n / 2;

  // Kaiser kernel on N/2+1 points. The I0(beta) normalization cancels in
  // the cumulative ratio below, so it is omitted.
  std::vector<double> kernel(half + 1);
  for (int j = 0; j <= half; ++j) {
    const double t = half > 0 ? 2.0 * j / half - 1.0 : 0.0;
    const double arg = spec.beta * std::sqrt(std::max(0.0, 1.0 - t * t));
    kernel[j] = std::cyl_bessel_i(0.0, arg);
  }

  std::vector<double> cumulative(half + 1);
  double running = 0.0;
  for (int j = 0; j <= half; ++j) {
    running += kernel[j];
    cumulative[j] = running;
  }
  const double total = cumulative[half];

  std::vector<double> window(n);
  for (int i = 0; i < half; ++i) {
    const double v = std::sqrt(cumulative[i] / total);
    window[i] = v;
    window[n - 1 - i] = v;
  }
  return window;
}

double window_l2_norm(const WindowSpec& spec) {
  const std::vector<double> w = make_kbd_window(spec);
  double acc = 0.0;
  for (double v : w) acc += v * v;
  return std::sqrt(acc);
}

int frame_count(std::int64_t length, const WindowSpec& spec) {
  const std::int64_t padded = length + 2 * spec.hop;
  if (padded <= spec.length) return 1;
  return static_cast<int>((padded - spec.length + spec.hop - 1) / spec.hop) + 1;
}

FrameGrid segment(std::span<const double> signal, const WindowSpec& spec) {
  validate(spec);
  if (signal.empty()) {
    throw ArgumentError("segment: empty signal");
  }
  const int n = spec.length;
  const int hop = spec.hop;
  const std::int64_t len = static_cast<std::int64_t>(signal.size());
  const std::vector<double> window = make_kbd_window(spec);

  FrameGrid grid;
  grid.spec = spec;
  grid.original_length = len;
  grid.pad_leading = hop;
  grid.num_frames = frame_count(len, spec);
  grid.samples.assign(static_cast<std::size_t>(grid.num_frames) * n, 0.0);

  for (int m = 0; m < grid.num_frames; ++m) {
    auto out = grid.row(m);
    const std::int64_t start = static_cast<std::int64_t>(m) * hop - hop;
    for (int i = 0; i < n; ++i) {
      const std::int64_t p = start + i;  // position in the original signal
      if (p >= 0 && p < len) {
        out[i] = signal[static_cast<std::size_t>(p)] * window[i];
      }
    }
  }
  return grid;
}

std::vector<double> overlap_add(const FrameGrid& frames) {
  validate(frames.spec);
  const int n = frames.spec.length;
  const int hop = frames.spec.hop;
  if (frames.num_frames <= 0 ||
      frames.samples.size() != static_cast<std::size_t>(frames.num_frames) * n) {
    throw ArgumentError("overlap_add: malformed frame grid");
  }
  const std::vector<double> window = make_kbd_window(frames.spec);

  const std::int64_t acc_len =
      static_cast<std::int64_t>(frames.num_frames - 1) * hop + n;
  std::vector<double> acc(static_cast<std::size_t>(acc_len), 0.0);
  std::vector<double> profile(static_cast<std::size_t>(acc_len), 0.0);

  for (int m = 0; m < frames.num_frames; ++m) {
    const auto row = frames.row(m);
    const std::int64_t start = static_cast<std::int64_t>(m) * hop;
    for (int i = 0; i < n; ++i) {
      acc[static_cast<std::size_t>(start + i)] += row[i] * window[i];
      profile[static_cast<std::size_t>(start + i)] += window[i] * window[i];
    }
  }

  std::vector<double> out(static_cast<std::size_t>(frames.original_length), 0.0);
  const std::int64_t offset = frames.pad_leading;
  for (std::int64_t p = 0; p < frames.original_length; ++p) {
    const std::int64_t q = p + offset;
    if (q < acc_len) {
      out[static_cast<std::size_t>(p)] =
          acc[static_cast<std::size_t>(q)] /
          std::max(profile[static_cast<std::size_t>(q)], kProfileFloor);
    }
  }
  return out;
}

std::vector<double> cola_profile(const WindowSpec& spec, std::int64_t length) {
  validate(spec);
  if (length < spec.length) {
    throw ArgumentError("cola_profile: length must be >= window length");
  }
  const std::vector<double> window = make_kbd_window(spec);
  std::vector<double> profile(static_cast<std::size_t>(length), 0.0);
  for (std::int64_t start = 0; start < length; start += spec.hop) {
    for (int i = 0; i < spec.length; ++i) {
      const std::int64_t p = start + i;
      if (p < length) {
        profile[static_cast<std::size_t>(p)] += window[i] * window[i];
      }
    }
  }
  return profile;
}

}  // namespace sgeq
