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

#include "sgeq/codec.hpp"

#include <bit>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "sgeq/error.hpp"
#include "sgeq/shapegain.hpp"

namespace sgeq {
namespace {

// Orthonormal type-II cosine matrix for size n, row k holding basis k.
// Cached: sweeps apply the same transform thousands of times.
std::shared_ptr<const std::vector<double>> dct_matrix(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto matrix = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  const double norm0 = std::sqrt(1.0 / n);
  const double normk = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double scale = (k == 0) ? norm0 : normk;
    for (int i = 0; i < n; ++i) {
      (*matrix)[static_cast<std::size_t>(k) * n + i] =
          scale * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
    }
  }
  cache[n] = matrix;
  return matrix;
}

const char* provenance_for(CodecMode mode) {
  return mode == CodecMode::kEqualizer ? "equalized" : "raw";
}

void check_model(const CodecConfig& cfg, const RvqModel& model) {
  if (model.dim != cfg.window.length) {
    throw ConfigError("model dimension " + std::to_string(model.dim) +
                      " does not match frame length " +
                      std::to_string(cfg.window.length));
  }
  if (model.codebook_size != cfg.codebook_size) {
    throw ConfigError("model codebook size " +
                      std::to_string(model.codebook_size) +
                      " does not match configured " +
                      std::to_string(cfg.codebook_size));
  }
  if (model.num_stages < cfg.num_stages) {
    throw ConfigError("model has " + std::to_string(model.num_stages) +
                      " stages, configuration needs " +
                      std::to_string(cfg.num_stages));
  }
}

std::vector<double> centered(std::span<const double> signal) {
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(signal.size());
  std::vector<double> out(signal.begin(), signal.end());
  for (double& v : out) v -= mean;
  return out;
}

}  // namespace

void validate(const CodecConfig& cfg) {
  validate(cfg.window);
  if (cfg.codebook_size < 1 || cfg.codebook_size > 65535) {
    throw ConfigError("codebook_size must be in [1, 65535], got " +
                      std::to_string(cfg.codebook_size));
  }
  if (cfg.num_stages < 1 || cfg.num_stages > 255) {
    throw ConfigError("num_stages must be in [1, 255], got " +
                      std::to_string(cfg.num_stages));
  }
  if (cfg.sample_rate < 1) {
    throw ConfigError("sample_rate must be positive");
  }
  GainQuantConfig gq = cfg.gain_quant;
  gq.full_scale = 1.0;  // derived at use time; validate the rest
  validate(gq);
  const double mu_int = std::round(cfg.gain_quant.mu);
  if (cfg.gain_quant.mu != mu_int || mu_int < 1.0 || mu_int > 65535.0) {
    throw ConfigError("mu must be an integer in [1, 65535] for the stream "
                      "header, got " +
                      std::to_string(cfg.gain_quant.mu));
  }
}

GainQuantConfig effective_gain_quant(const CodecConfig& cfg) {
  GainQuantConfig gq = cfg.gain_quant;
  gq.full_scale = window_l2_norm(cfg.window);
  return gq;
}

std::span<double> EmbeddingGrid::row(int m) {
  return std::span<double>(values.data() +
                               static_cast<std::size_t>(m) * dim,
                           static_cast<std::size_t>(dim));
}

std::span<const double> EmbeddingGrid::row(int m) const {
  return std::span<const double>(values.data() +
                                     static_cast<std::size_t>(m) * dim,
                                 static_cast<std::size_t>(dim));
}

EmbeddingGrid encode_frames(const FrameGrid& frames, const CodecConfig& cfg) {
  const int n = frames.spec.length;
  EmbeddingGrid grid;
  grid.num_frames = frames.num_frames;
  grid.dim = n;
  if (cfg.transform == Transform::kIdentity) {
    grid.values = frames.samples;
    return grid;
  }
  grid.values.resize(frames.samples.size());
  const auto matrix = dct_matrix(n);
  detail::matmul_nt(frames.samples.data(), matrix->data(), grid.values.data(),
                    static_cast<std::size_t>(frames.num_frames),
                    static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  return grid;
}

FrameGrid decode_frames(const EmbeddingGrid& embeddings,
                        const CodecConfig& cfg) {
  if (embeddings.dim != cfg.window.length) {
    throw ArgumentError("decode_frames: embedding dimension " +
                        std::to_string(embeddings.dim) +
                        " does not match frame length " +
                        std::to_string(cfg.window.length));
  }
  FrameGrid frames;
  frames.spec = cfg.window;
  frames.num_frames = embeddings.num_frames;
  frames.pad_leading = cfg.window.hop;
  const std::int64_t covered =
      static_cast<std::int64_t>(embeddings.num_frames - 1) * cfg.window.hop +
      cfg.window.length - 2 * cfg.window.hop;
  frames.original_length = std::max<std::int64_t>(covered, 0);
  if (cfg.transform == Transform::kIdentity) {
    frames.samples = embeddings.values;
    return frames;
  }
  frames.samples.resize(embeddings.values.size());
  const int n = cfg.window.length;
  const auto matrix = dct_matrix(n);
  detail::matmul_nn(embeddings.values.data(), matrix->data(),
                    frames.samples.data(),
                    static_cast<std::size_t>(embeddings.num_frames),
                    static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  return frames;
}

EncodedStream encode_signal(std::span<const double> signal, int sample_rate,
                            const CodecConfig& cfg, const RvqModel& model) {
  validate(cfg);
  check_model(cfg, model);
  if (sample_rate != cfg.sample_rate) {
    throw ConfigError("signal sample rate " + std::to_string(sample_rate) +
                      " does not match configured " +
                      std::to_string(cfg.sample_rate));
  }
  if (signal.empty()) {
    throw ArgumentError("encode_signal: empty signal");
  }
  if (signal.size() > 0xffffffffull) {
    throw ArgumentError("encode_signal: signal too long for the stream header");
  }
  if (!model.trained_on.empty() &&
      model.trained_on != provenance_for(cfg.mode)) {
    std::cerr << "warning: model trained on '" << model.trained_on
              << "' data used in " << provenance_for(cfg.mode)
              << "-frame mode\n";
  }

  EncodedStream stream;
  StreamHeader& h = stream.header;
  h.mode = (cfg.mode == CodecMode::kEqualizer) ? 1 : 0;
  h.sample_rate = static_cast<std::uint32_t>(cfg.sample_rate);
  h.frame_length = static_cast<std::uint16_t>(cfg.window.length);
  h.hop = static_cast<std::uint16_t>(cfg.window.hop);
  h.codebook_size = static_cast<std::uint16_t>(cfg.codebook_size);
  h.num_stages = static_cast<std::uint8_t>(cfg.num_stages);
  h.gain_bits = static_cast<std::uint8_t>(cfg.gain_quant.bits);
  h.mu = static_cast<std::uint16_t>(std::lround(cfg.gain_quant.mu));
  h.original_length = static_cast<std::uint32_t>(signal.size());

  FrameGrid coded_frames;
  if (cfg.mode == CodecMode::kEqualizer) {
    EqualizedSignal eq = equalize(signal, cfg.window);
    coded_frames = segment(eq.samples, cfg.window);
    const GainQuantConfig gq = effective_gain_quant(cfg);
    stream.gain_codes.reserve(eq.envelope.gains.size());
    for (double g : eq.envelope.gains) {
      stream.gain_codes.push_back(quantize_gain(g, gq));
    }
  } else {
    coded_frames = segment(centered(signal), cfg.window);
  }
  h.num_frames = static_cast<std::uint32_t>(coded_frames.num_frames);

  const EmbeddingGrid embeddings = encode_frames(coded_frames, cfg);
  stream.tokens = rvq_encode_batch(embeddings.values, model, cfg.num_stages);
  return stream;
}

std::vector<double> decode_signal(const EncodedStream& stream,
                                  const CodecConfig& cfg,
                                  const RvqModel& model) {
  validate(cfg);
  check_model(cfg, model);
  const StreamHeader& h = stream.header;
  const std::uint8_t want_mode =
      (cfg.mode == CodecMode::kEqualizer) ? 1 : 0;
  if (h.mode != want_mode) {
    throw ConfigError("stream mode does not match configured mode");
  }
  if (h.sample_rate != static_cast<std::uint32_t>(cfg.sample_rate)) {
    throw ConfigError("stream sample rate " + std::to_string(h.sample_rate) +
                      " does not match configured " +
                      std::to_string(cfg.sample_rate));
  }
  if (h.frame_length != cfg.window.length || h.hop != cfg.window.hop) {
    throw ConfigError("stream framing does not match configured window");
  }
  if (h.codebook_size != cfg.codebook_size) {
    throw ConfigError("stream codebook size does not match configuration");
  }
  if (h.num_stages > model.num_stages) {
    throw ConfigError("stream uses more stages than the model provides");
  }
  if (h.mode == 1) {
    if (h.gain_bits != cfg.gain_quant.bits) {
      throw ConfigError("stream gain_bits does not match configuration");
    }
    if (h.mu != static_cast<std::uint16_t>(std::lround(cfg.gain_quant.mu))) {
      throw ConfigError("stream mu does not match configuration");
    }
  }
  if (stream.tokens.size() != h.num_frames) {
    throw CorruptStreamError("token count does not match num_frames");
  }
  if (h.mode == 1 && stream.gain_codes.size() != h.num_frames) {
    throw CorruptStreamError("gain code count does not match num_frames");
  }

  EmbeddingGrid embeddings;
  embeddings.num_frames = static_cast<int>(h.num_frames);
  embeddings.dim = cfg.window.length;
  embeddings.values.resize(stream.tokens.size() *
                           static_cast<std::size_t>(embeddings.dim));
  for (std::size_t m = 0; m < stream.tokens.size(); ++m) {
    const std::vector<double> vec = rvq_decode(stream.tokens[m], model);
    std::copy(vec.begin(), vec.end(),
              embeddings.values.begin() + m * embeddings.dim);
  }

  FrameGrid frames = decode_frames(embeddings, cfg);
  frames.original_length = h.original_length;
  std::vector<double> waveform = overlap_add(frames);

  if (h.mode == 1) {
    const GainQuantConfig gq = effective_gain_quant(cfg);
    GainEnvelope envelope;
    envelope.spec = cfg.window;
    envelope.gains.reserve(stream.gain_codes.size());
    for (std::uint32_t code : stream.gain_codes) {
      if (code >= (1u << h.gain_bits)) {
        throw CorruptStreamError("gain code out of range");
      }
      envelope.gains.push_back(dequantize_gain(code, gq));
    }
    waveform = deequalize(waveform, envelope);
  }
  return waveform;
}

std::int64_t bitrate(const CodecConfig& cfg) {
  validate(cfg);
  if (cfg.sample_rate % cfg.window.hop != 0) {
    throw ConfigError("bitrate needs an integral frame rate; " +
                      std::to_string(cfg.sample_rate) + " / " +
                      std::to_string(cfg.window.hop) + " is not");
  }
  if (!std::has_single_bit(static_cast<unsigned>(cfg.codebook_size))) {
    throw ConfigError("bitrate needs a power-of-two codebook size, got " +
                      std::to_string(cfg.codebook_size));
  }
  const std::int64_t f = cfg.sample_rate / cfg.window.hop;
  const std::int64_t log2c = token_bits(cfg.codebook_size);
  std::int64_t per_frame =
      static_cast<std::int64_t>(cfg.num_stages) * log2c;
  if (cfg.mode == CodecMode::kEqualizer) {
    per_frame += cfg.gain_quant.bits;
  }
  return f * per_frame;
}

}  // namespace sgeq
