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

#ifndef SGEQ_RVQ_HPP_
#define SGEQ_RVQ_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sgeq {

// Multi-stage residual vector quantizer. Codebooks are stored as 32-bit
// floats, row-major (codeword index varies along rows), one matrix per
// stage; all arithmetic widens them to double. trained_on records what
// kind of data the codebooks were fitted to ("raw" or "equalized") so a
// codec can warn when a model is used on the other kind.
struct RvqModel {
  int dim = 0;
  int codebook_size = 0;
  int num_stages = 0;
  std::vector<std::vector<float>> codebooks;
  std::string trained_on;

  std::span<const float> codeword(int stage, int index) const;
};

// Throws DataError when shapes disagree or a codeword is non-finite.
void validate(const RvqModel& model);

// The per-frame output of the quantizer: one codeword index per stage,
// in stage order. May be shorter than the model when encoded at a
// truncated depth.
struct TokenFrame {
  std::vector<std::uint32_t> indices;
};

struct NearestResult {
  std::uint32_t index = 0;
  std::vector<double> residual;
};

// Exhaustive nearest codeword in squared Euclidean distance, ties going
// to the lowest index. codebook holds codebook_size rows of x.size()
// floats. Throws ArgumentError on a shape mismatch.
NearestResult vq_nearest(std::span<const double> x,
                         std::span<const float> codebook, int codebook_size);

// Greedy stage-by-stage quantization of x down to `depth` stages.
// Throws ArgumentError when depth is outside [1, num_stages] or x has
// the wrong dimension.
TokenFrame rvq_encode(std::span<const double> x, const RvqModel& model,
                      int depth);

// Quantizes M vectors laid out row-major in data (size M * dim). The
// heavy path: assignments are computed stage-by-stage over the whole
// batch through matrix products.
std::vector<TokenFrame> rvq_encode_batch(std::span<const double> data,
                                         const RvqModel& model, int depth);

// Sum of the selected codewords over the stages present in `tokens`.
// Throws CorruptStreamError on an out-of-range index, ArgumentError
// when tokens has more stages than the model.
std::vector<double> rvq_decode(const TokenFrame& tokens,
                               const RvqModel& model);

struct TrainOptions {
  int codebook_size = 0;
  int num_stages = 0;
  std::uint64_t seed = 0;
  int max_iters = 100;
  double rel_tol = 1e-5;
  // Provenance label stored in the model ("raw", "equalized", ...).
  std::string trained_on;
};

// Per-stage training diagnostics. stage_mse[q] is the mean squared
// residual norm left after stage q, measured with the rounded (stored)
// codebook, so it matches what the deployed model achieves.
struct TrainReport {
  std::vector<double> stage_mse;
  std::vector<int> stage_iters;
};

// Trains each stage by k-means (k-means++ seeding, Lloyd refinement) on
// the residuals left by the stages before it. Deterministic for a fixed
// seed. Throws DataError when data holds fewer than codebook_size
// vectors, ArgumentError on non-finite input or bad options.
RvqModel rvq_train(std::span<const double> data, int dim,
                   const TrainOptions& options,
                   TrainReport* report = nullptr);

// Per-stage codeword histograms and normalized perplexity
// exp(entropy) / C, a utilization figure in (0, 1]. Frames shorter than
// the model contribute only to the stages they carry; a stage with no
// counts reports perplexity 0.
struct UsageStats {
  std::vector<std::vector<std::int64_t>> histograms;
  std::vector<double> perplexity;
};

UsageStats codebook_usage(const std::vector<TokenFrame>& tokens,
                          const RvqModel& model);

// Binary model file round trip. Throws IoError on filesystem failures,
// DataError on malformed content.
void save_model(const RvqModel& model, const std::string& path);
RvqModel load_model(const std::string& path);

}  // namespace sgeq

#endif  // SGEQ_RVQ_HPP_
