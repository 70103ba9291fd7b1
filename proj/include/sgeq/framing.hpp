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

#ifndef SGEQ_FRAMING_HPP_
#define SGEQ_FRAMING_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace sgeq {

enum class WindowKind { kKbd };

// Analysis/synthesis window geometry. The same window is used on both
// sides. `beta` is the Kaiser kernel shape parameter of the KBD
// construction, passed straight through to the Bessel argument.
struct WindowSpec {
  WindowKind kind = WindowKind::kKbd;
  double beta = 4.0;
  int length = 640;  // N, must be even
  int hop = 320;     // H, 1 <= H <= N
};

// Throws ConfigError when a field is out of range.
void validate(const WindowSpec& spec);

inline bool operator==(const WindowSpec& a, const WindowSpec& b) {
  return a.kind == b.kind && a.beta == b.beta && a.length == b.length &&
         a.hop == b.hop;
}

// Windowed short-term frames of a signal, row-major M x N, plus the
// bookkeeping needed to invert the segmentation. The source signal is
// zero-padded by `pad_leading` (= hop) samples on each side before
// framing so that every original sample has full window coverage.
struct FrameGrid {
  std::vector<double> samples;  // num_frames * spec.length, row-major
  int num_frames = 0;
  WindowSpec spec;
  std::int64_t original_length = 0;
  int pad_leading = 0;

  std::span<double> row(int m) {
    return {samples.data() + static_cast<std::size_t>(m) * spec.length,
            static_cast<std::size_t>(spec.length)};
  }
  std::span<const double> row(int m) const {
    return {samples.data() + static_cast<std::size_t>(m) * spec.length,
            static_cast<std::size_t>(spec.length)};
  }
};

// Kaiser-Bessel Derived window of length spec.length. Built from a
// length-(N/2+1) Kaiser kernel via the cumulative-sum square-root
// construction; symmetric, strictly positive, and for H = N/2 satisfies
// w(n)^2 + w(n+H)^2 = 1 on the first half.
std::vector<double> make_kbd_window(const WindowSpec& spec);

// L2 norm of the analysis window; the natural full-scale for frame gains
// of signals bounded by [-1, 1].
double window_l2_norm(const WindowSpec& spec);

// Number of frames produced when segmenting a signal of `length` samples
// under `spec` (after padding by hop on each side).
int frame_count(std::int64_t length, const WindowSpec& spec);

// Segments `signal` into overlapping windowed frames. Frame m holds
// padded[m*H : m*H+N) multiplied elementwise by the analysis window.
// Throws ArgumentError on an empty signal.
FrameGrid segment(std::span<const double> signal, const WindowSpec& spec);

// Weighted overlap-add inverse of segment(). Each frame is multiplied by
// the synthesis window, accumulated at stride H, divided samplewise by
// the accumulated window-product profile (clamped below at 1e-12), and
// trimmed back to original_length samples. Exact inverse of segment()
// up to rounding for any strictly positive window.
std::vector<double> overlap_add(const FrameGrid& frames);

// Accumulated analysis*synthesis window profile over [0, length) for the
// frame positions 0, H, 2H, ... that start inside the range. Interior
// samples of a half-overlap KBD tiling sit at exactly 1.
// Throws ArgumentError when length < spec.length.
std::vector<double> cola_profile(const WindowSpec& spec, std::int64_t length);

}  // namespace sgeq

#endif  // SGEQ_FRAMING_HPP_
