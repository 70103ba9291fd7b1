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

#ifndef SGEQ_SHAPEGAIN_HPP_
#define SGEQ_SHAPEGAIN_HPP_

#include <span>
#include <vector>

#include "sgeq/framing.hpp"

namespace sgeq {

// Regularizer added to the gain denominator when normalizing frames.
inline constexpr double kGainEpsilon = 1e-12;

// Frames whose gain is at or below this fraction of the window L2 norm
// carry no usable shape; they pass through normalization untouched so
// that digital silence is not blown up to unit energy.
inline constexpr double kSilenceGainFraction = 1e-8;

// Per-frame L2 gains of a windowed frame grid, in linear amplitude units.
struct GainEnvelope {
  std::vector<double> gains;
  WindowSpec spec;

  int size() const { return static_cast<int>(gains.size()); }
};

// A waveform rebuilt from gain-normalized frames. Every frame of the
// result has (approximately) the same energy. The envelope retains the
// gains measured on the source frames, for transmission or restoration,
// and mean_removed is the DC value subtracted before analysis.
struct EqualizedSignal {
  std::vector<double> samples;
  GainEnvelope envelope;
  double mean_removed = 0.0;
};

// Gain threshold below which a frame is classified as silence.
double silence_gain_threshold(const WindowSpec& spec);

// gains[m] = L2 norm of frame m.
GainEnvelope frame_gains(const FrameGrid& frames);

// Divides frame m by (g_m + epsilon). Silence frames (gain at or below
// the silence threshold) pass through unchanged.
// Throws ArgumentError when the envelope does not match the grid.
FrameGrid normalize_frames(const FrameGrid& frames,
                           const GainEnvelope& envelope);

// Full gain equalization: subtract the signal mean, segment, measure the
// gain envelope, normalize each frame, and rebuild a waveform by
// overlap-add. The returned envelope holds the unquantized source gains.
EqualizedSignal equalize(std::span<const double> signal,
                         const WindowSpec& spec);

// Gain restoration: re-segments the equalized waveform with the analysis
// window, scales frame m by envelope.gains[m], and rebuilds by
// overlap-add. Throws ArgumentError when the envelope length does not
// match the frame count of `equalized` under envelope.spec.
std::vector<double> deequalize(std::span<const double> equalized,
                               const GainEnvelope& envelope);

}  // namespace sgeq

#endif  // SGEQ_SHAPEGAIN_HPP_
