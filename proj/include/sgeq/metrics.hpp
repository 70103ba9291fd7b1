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

#ifndef SGEQ_METRICS_HPP_
#define SGEQ_METRICS_HPP_

#include <span>
#include <vector>

#include "sgeq/codec.hpp"
#include "sgeq/corpus.hpp"
#include "sgeq/rvq.hpp"

namespace sgeq {

// Ceiling reported when the resynthesis error is numerically zero (or
// the true ratio exceeds it).
inline constexpr double kSiSdrCapDb = 150.0;

// Scale-invariant signal-to-distortion ratio in dB: the reference is
// first rescaled by its projection onto the estimate's inner product,
// so any global gain on the estimate cancels. Throws ArgumentError on
// length mismatch or an identically zero reference.
double si_sdr(std::span<const double> reference,
              std::span<const double> estimate);

// s_alpha = 10^(alpha_db / 20) * s.
std::vector<double> gain_scale(std::span<const double> signal,
                               double alpha_db);

// Stability of the coding pipeline under global gain changes, pooled
// over the frames of a corpus. Per gain offset alpha:
//  - norm_ratio: mean ||z_alpha|| / ||z|| over frames, computed on the
//    pre-quantization embeddings (frames where either norm vanishes
//    are skipped);
//  - cosine: mean cosine similarity between z_alpha and z;
//  - dcs: fraction of frames whose full token tuple equals the
//    0 dB tuple; frames classified as silence at either gain are left
//    out of the count;
//  - dcs_stage[q]: same fraction counting only stage q's token.
// The 0 dB row is (1, 1, 1) by definition. Requires 0 in alphas.
struct SensitivityProfile {
  std::vector<double> alphas;
  std::vector<double> norm_ratio;
  std::vector<double> cosine;
  std::vector<double> dcs;
  std::vector<std::vector<double>> dcs_stage;  // [alpha][stage]
};

SensitivityProfile sensitivity_profile(const std::vector<Utterance>& corpus,
                                       std::span<const double> alphas,
                                       const CodecConfig& cfg,
                                       const RvqModel& model);

}  // namespace sgeq

#endif  // SGEQ_METRICS_HPP_
