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

#include "sgeq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sgeq/error.hpp"
#include "sgeq/framing.hpp"
#include "sgeq/shapegain.hpp"

namespace sgeq {
namespace {

// Embeddings, token frames, and silence flags for one utterance at one
// gain; the per-mode analysis front end of the codec.
struct FrameAnalysis {
  EmbeddingGrid embeddings;
  std::vector<TokenFrame> tokens;
  std::vector<bool> silent;
};

FrameAnalysis analyze(std::span<const double> signal, const CodecConfig& cfg,
                      const RvqModel& model) {
  FrameAnalysis analysis;
  const double silence = silence_gain_threshold(cfg.window);

  FrameGrid coded_frames;
  GainEnvelope gains;
  if (cfg.mode == CodecMode::kEqualizer) {
    EqualizedSignal eq = equalize(signal, cfg.window);
    coded_frames = segment(eq.samples, cfg.window);
    gains = std::move(eq.envelope);
  } else {
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(signal.size());
    std::vector<double> centered(signal.begin(), signal.end());
    for (double& v : centered) v -= mean;
    coded_frames = segment(centered, cfg.window);
    gains = frame_gains(coded_frames);
  }

  analysis.silent.resize(gains.gains.size());
  for (std::size_t m = 0; m < gains.gains.size(); ++m) {
    analysis.silent[m] = gains.gains[m] <= silence;
  }
  analysis.embeddings = encode_frames(coded_frames, cfg);
  analysis.tokens =
      rvq_encode_batch(analysis.embeddings.values, model, cfg.num_stages);
  return analysis;
}

}  // namespace

double si_sdr(std::span<const double> reference,
              std::span<const double> estimate) {
  if (reference.size() != estimate.size()) {
    throw ArgumentError("si_sdr: length mismatch (" +
                        std::to_string(reference.size()) + " vs " +
                        std::to_string(estimate.size()) + ")");
  }
  double ref_energy = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    ref_energy += reference[i] * reference[i];
    dot += estimate[i] * reference[i];
  }
  if (ref_energy <= 0.0) {
    throw ArgumentError("si_sdr: reference is identically zero");
  }
  const double a = dot / ref_energy;
  double target = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double t = a * reference[i];
    const double e = t - estimate[i];
    target += t * t;
    error += e * e;
  }
  if (error <= 0.0) return target > 0.0 ? kSiSdrCapDb : -kSiSdrCapDb;
  const double value = 10.0 * std::log10(target / error);
  return std::clamp(value, -kSiSdrCapDb, kSiSdrCapDb);
}

std::vector<double> gain_scale(std::span<const double> signal,
                               double alpha_db) {
  const double factor = std::pow(10.0, alpha_db / 20.0);
  std::vector<double> out(signal.begin(), signal.end());
  for (double& v : out) v *= factor;
  return out;
}

SensitivityProfile sensitivity_profile(const std::vector<Utterance>& corpus,
                                       std::span<const double> alphas,
                                       const CodecConfig& cfg,
                                       const RvqModel& model) {
  if (corpus.empty()) {
    throw ArgumentError("sensitivity_profile: empty corpus");
  }
  if (std::find(alphas.begin(), alphas.end(), 0.0) == alphas.end()) {
    throw ArgumentError("sensitivity_profile: alpha grid must contain 0");
  }

  std::vector<FrameAnalysis> reference;
  reference.reserve(corpus.size());
  for (const Utterance& utterance : corpus) {
    reference.push_back(analyze(utterance.samples, cfg, model));
  }

  SensitivityProfile profile;
  profile.alphas.assign(alphas.begin(), alphas.end());
  profile.norm_ratio.resize(alphas.size());
  profile.cosine.resize(alphas.size());
  profile.dcs.resize(alphas.size());
  profile.dcs_stage.assign(alphas.size(),
                           std::vector<double>(cfg.num_stages, 0.0));

  for (std::size_t a = 0; a < alphas.size(); ++a) {
    if (alphas[a] == 0.0) {
      // Reference point: identical pipeline, identical tokens.
      profile.norm_ratio[a] = 1.0;
      profile.cosine[a] = 1.0;
      profile.dcs[a] = 1.0;
      std::fill(profile.dcs_stage[a].begin(), profile.dcs_stage[a].end(),
                1.0);
      continue;
    }

    double ratio_sum = 0.0;
    double cosine_sum = 0.0;
    std::int64_t embed_frames = 0;
    std::int64_t counted = 0;
    std::int64_t stable = 0;
    std::vector<std::int64_t> stage_stable(cfg.num_stages, 0);

    for (std::size_t u = 0; u < corpus.size(); ++u) {
      const FrameAnalysis scaled = analyze(
          gain_scale(corpus[u].samples, alphas[a]), cfg, model);
      const FrameAnalysis& base = reference[u];

      for (int m = 0; m < base.embeddings.num_frames; ++m) {
        const std::span<const double> z = base.embeddings.row(m);
        const std::span<const double> za = scaled.embeddings.row(m);
        double nz = 0.0, nza = 0.0, dot = 0.0;
        for (int i = 0; i < base.embeddings.dim; ++i) {
          nz += z[i] * z[i];
          nza += za[i] * za[i];
          dot += za[i] * z[i];
        }
        if (nz > 0.0 && nza > 0.0) {
          ratio_sum += std::sqrt(nza / nz);
          cosine_sum += dot / std::sqrt(nz * nza);
          ++embed_frames;
        }

        if (base.silent[m] || scaled.silent[m]) continue;
        ++counted;
        if (base.tokens[m].indices == scaled.tokens[m].indices) ++stable;
        for (int q = 0; q < cfg.num_stages; ++q) {
          if (base.tokens[m].indices[q] == scaled.tokens[m].indices[q]) {
            ++stage_stable[q];
          }
        }
      }
    }

    profile.norm_ratio[a] =
        (embed_frames > 0) ? ratio_sum / static_cast<double>(embed_frames)
                           : 1.0;
    profile.cosine[a] =
        (embed_frames > 0) ? cosine_sum / static_cast<double>(embed_frames)
                           : 1.0;
    profile.dcs[a] =
        (counted > 0) ? static_cast<double>(stable) /
                            static_cast<double>(counted)
                      : 1.0;
    for (int q = 0; q < cfg.num_stages; ++q) {
      profile.dcs_stage[a][q] =
          (counted > 0) ? static_cast<double>(stage_stable[q]) /
                              static_cast<double>(counted)
                        : 1.0;
    }
  }
  return profile;
}

}  // namespace sgeq
