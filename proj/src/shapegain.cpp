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

#include "sgeq/shapegain.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sgeq/error.hpp"
#include "sgeq/framing.hpp"

namespace sgeq {

double silence_gain_threshold(const WindowSpec& spec) {
  return kSilenceGainFraction * window_l2_norm(spec);
}

GainEnvelope frame_gains(const FrameGrid& frames) {
  GainEnvelope envelope;
  envelope.spec = frames.spec;
  envelope.gains.resize(frames.num_frames);
  for (int m = 0; m < frames.num_frames; ++m) {
    std::span<const double> row = frames.row(m);
    double energy = 0.0;
    for (double v : row) {
      energy += v * v;
    }
    envelope.gains[m] = std::sqrt(energy);
  }
  return envelope;
}

FrameGrid normalize_frames(const FrameGrid& frames,
                           const GainEnvelope& envelope) {
  if (envelope.size() != frames.num_frames || !(envelope.spec == frames.spec)) {
    throw ArgumentError(
        "normalize_frames: envelope does not match the frame grid (" +
        std::to_string(envelope.size()) + " gains vs " +
        std::to_string(frames.num_frames) + " frames)");
  }
  const double silence = silence_gain_threshold(frames.spec);
  FrameGrid out = frames;
  for (int m = 0; m < out.num_frames; ++m) {
    const double g = envelope.gains[m];
    if (g <= silence) {
      continue;
    }
    const double scale = 1.0 / (g + kGainEpsilon);
    std::span<double> row = out.row(m);
    for (double& v : row) {
      v *= scale;
    }
  }
  return out;
}

EqualizedSignal equalize(std::span<const double> signal,
                         const WindowSpec& spec) {
  if (signal.empty()) {
    throw ArgumentError("equalize: empty signal");
  }
  double mean = 0.0;
  for (double v : signal) {
    mean += v;
  }
  mean /= static_cast<double>(signal.size());

  std::vector<double> centered(signal.begin(), signal.end());
  for (double& v : centered) {
    v -= mean;
  }

  FrameGrid frames = segment(centered, spec);
  GainEnvelope envelope = frame_gains(frames);
  FrameGrid normalized = normalize_frames(frames, envelope);

  EqualizedSignal result;
  result.samples = overlap_add(normalized);
  result.envelope = std::move(envelope);
  result.mean_removed = mean;
  return result;
}

std::vector<double> deequalize(std::span<const double> equalized,
                               const GainEnvelope& envelope) {
  FrameGrid frames = segment(equalized, envelope.spec);
  if (envelope.size() != frames.num_frames) {
    throw ArgumentError(
        "deequalize: envelope holds " + std::to_string(envelope.size()) +
        " gains but the waveform segments into " +
        std::to_string(frames.num_frames) + " frames");
  }
  for (int m = 0; m < frames.num_frames; ++m) {
    const double g = envelope.gains[m];
    std::span<double> row = frames.row(m);
    for (double& v : row) {
      v *= g;
    }
  }
  return overlap_add(frames);
}

}  // namespace sgeq
