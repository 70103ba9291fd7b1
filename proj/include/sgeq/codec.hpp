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

#ifndef SGEQ_CODEC_HPP_
#define SGEQ_CODEC_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "sgeq/bitstream.hpp"
#include "sgeq/framing.hpp"
#include "sgeq/gainquant.hpp"
#include "sgeq/rvq.hpp"

namespace sgeq {

enum class CodecMode { kBaseline, kEqualizer };

// Per-frame linear map standing in for a learned encoder. The cosine
// transform is the orthonormal type-II DCT, so it preserves energy and
// is exactly invertible.
enum class Transform { kIdentity, kDct };

struct CodecConfig {
  WindowSpec window;
  Transform transform = Transform::kDct;
  int codebook_size = 1024;
  int num_stages = 8;
  // full_scale is ignored here: the codec always anchors the gain
  // quantizer's full scale to the analysis window's L2 norm, the
  // largest gain a [-1,1] signal can produce.
  GainQuantConfig gain_quant;
  CodecMode mode = CodecMode::kEqualizer;
  int sample_rate = 16000;
};

// Throws ConfigError on out-of-range fields. Serializable streams need
// an integral mu in [1, 65535] and field values that fit the header.
void validate(const CodecConfig& cfg);

// The gain quantizer the codec actually runs: cfg.gain_quant with
// full_scale replaced by the window L2 norm.
GainQuantConfig effective_gain_quant(const CodecConfig& cfg);

// Per-frame transform coefficients, row-major.
struct EmbeddingGrid {
  std::vector<double> values;
  int num_frames = 0;
  int dim = 0;

  std::span<double> row(int m);
  std::span<const double> row(int m) const;
};

// Applies the per-frame transform. The embedding dimension equals the
// frame length.
EmbeddingGrid encode_frames(const FrameGrid& frames, const CodecConfig& cfg);

// Exact inverse of encode_frames up to rounding. The returned grid is
// hop-padded like segment()'s output; its original_length is the
// longest span the frames cover, callers holding the true length (the
// stream header) should overwrite it before overlap_add.
FrameGrid decode_frames(const EmbeddingGrid& embeddings,
                        const CodecConfig& cfg);

// Runs the full analysis side and quantization for one utterance.
// Equalizer mode: gain-equalize, re-segment the equalized waveform,
// transform, residual-quantize, and mu-law code the gain envelope.
// Baseline mode: transform the raw (centered) frames and
// residual-quantize them directly.
// The model must have the configured codebook size and at least
// num_stages stages; extra stages are ignored, so one deep model can
// serve shallower configurations. Emits a warning on stderr when the
// model's provenance does not match the mode. Throws ConfigError on a
// sample-rate or model mismatch.
EncodedStream encode_signal(std::span<const double> signal, int sample_rate,
                            const CodecConfig& cfg, const RvqModel& model);

// Inverse pipeline: tokens to embeddings to frames to waveform, then
// gain restoration in equalizer mode. The output is zero-mean; the DC
// removed by encoding is not transmitted. Throws ConfigError when the
// stream header disagrees with cfg or the model, CorruptStreamError on
// malformed stream content.
std::vector<double> decode_signal(const EncodedStream& stream,
                                  const CodecConfig& cfg,
                                  const RvqModel& model);

// Bits per second of the configured stream layout. Requires an
// integral frame rate (sample_rate divisible by hop) and a
// power-of-two codebook; throws ConfigError otherwise.
std::int64_t bitrate(const CodecConfig& cfg);

}  // namespace sgeq

#endif  // SGEQ_CODEC_HPP_
