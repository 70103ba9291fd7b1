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

#include "sgeq/rvq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "sgeq/error.hpp"

namespace sgeq {
namespace {

constexpr char kModelMagic[4] = {'S', 'G', 'R', 'Q'};
constexpr std::uint8_t kModelVersion = 1;

// Canonical uniform draw in [0,1) with 53 random bits, so results do
// not depend on the library's distribution implementations.
double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n) by rejection.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return static_cast<std::size_t>(x % bound);
  }
}

std::vector<double> widen(const std::vector<float>& codebook) {
  return std::vector<double>(codebook.begin(), codebook.end());
}

// Nearest-codeword assignment for a row-major batch, through one matrix
// product: argmin_j ||x_i - c_j||^2 = argmin_j (||c_j||^2 - 2 x_i.c_j).
// Ties go to the lowest index. `gram` is scratch of size at least m*c.
void assign_nearest(const double* data, std::size_t m, const double* codebook,
                    std::size_t c, std::size_t d,
                    const std::vector<double>& cnorm,
                    std::vector<double>& gram, std::uint32_t* indices) {
  gram.resize(m * c);
  detail::matmul_nt(data, codebook, gram.data(), m, c, d);
  for (std::size_t i = 0; i < m; ++i) {
    const double* gi = gram.data() + i * c;
    std::size_t best = 0;
    double best_score = cnorm[0] - 2.0 * gi[0];
    for (std::size_t j = 1; j < c; ++j) {
      const double score = cnorm[j] - 2.0 * gi[j];
      if (score < best_score) {
        best_score = score;
        best = j;
      }
    }
    indices[i] = static_cast<std::uint32_t>(best);
  }
}

std::vector<double> codeword_norms(const double* codebook, std::size_t c,
                                   std::size_t d) {
  std::vector<double> norms(c);
  for (std::size_t j = 0; j < c; ++j) {
    const double* row = codebook + j * d;
    double acc = 0.0;
    for (std::size_t p = 0; p < d; ++p) acc += row[p] * row[p];
    norms[j] = acc;
  }
  return norms;
}

// k-means++ seeding on a subsample of the data, using a precomputed
// Gram matrix so each weight update costs O(S). Returns C row indices
// into `data`.
std::vector<std::size_t> kmeanspp_seeds(const double* data, std::size_t m,
                                        std::size_t d, std::size_t c,
                                        std::mt19937_64& rng) {
  const std::size_t target = std::max<std::size_t>(2 * c, 1024);
  std::vector<std::size_t> candidates(m);
  std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  if (m > target) {
    for (std::size_t i = 0; i < target; ++i) {
      const std::size_t j = i + uniform_index(rng, m - i);
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(target);
    std::sort(candidates.begin(), candidates.end());
  }
  const std::size_t s = candidates.size();

  std::vector<double> sub(s * d);
  for (std::size_t i = 0; i < s; ++i) {
    const double* row = data + candidates[i] * d;
    std::copy(row, row + d, sub.data() + i * d);
  }
  std::vector<double> gram(s * s);
  detail::matmul_nt(sub.data(), sub.data(), gram.data(), s, s, d);
  std::vector<double> snorm(s);
  for (std::size_t i = 0; i < s; ++i) snorm[i] = gram[i * s + i];

  std::vector<bool> chosen(s, false);
  std::vector<double> mindist(s, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> seeds;
  seeds.reserve(c);

  std::size_t pick = uniform_index(rng, s);
  for (std::size_t t = 0; t < c; ++t) {
    if (t > 0) {
      double total = 0.0;
      for (std::size_t i = 0; i < s; ++i) total += mindist[i];
      if (total > 0.0) {
        const double r = uniform_double(rng) * total;
        double cum = 0.0;
        std::size_t sel = s;
        std::size_t last_positive = s;
        for (std::size_t i = 0; i < s; ++i) {
          if (mindist[i] <= 0.0) continue;
          last_positive = i;
          cum += mindist[i];
          if (cum > r) {
            sel = i;
            break;
          }
        }
        pick = (sel != s) ? sel : last_positive;
      } else {
        // Every candidate coincides with a chosen seed; fall back to
        // the lowest unchosen index and let empty-cluster repair sort
        // out the duplicates.
        pick = s;
        for (std::size_t i = 0; i < s; ++i) {
          if (!chosen[i]) {
            pick = i;
            break;
          }
        }
        if (pick == s) pick = t % s;
      }
    }
    chosen[pick] = true;
    seeds.push_back(candidates[pick]);
    const double* gp = gram.data() + pick * s;
    for (std::size_t i = 0; i < s; ++i) {
      const double dist =
          std::max(0.0, snorm[i] - 2.0 * gp[i] + snorm[pick]);
      if (dist < mindist[i]) mindist[i] = dist;
    }
  }
  return seeds;
}

// One stage of k-means: seeds, Lloyd refinement with empty-cluster
// repair, stop on max_iters or small relative improvement. Returns the
// converged centroids in double precision.
std::vector<double> train_stage(const double* data, std::size_t m,
                                std::size_t d, std::size_t c,
                                int max_iters, double rel_tol,
                                std::mt19937_64& rng, int* iters_run) {
  std::vector<std::size_t> seeds = kmeanspp_seeds(data, m, d, c, rng);
  std::vector<double> centroids(c * d);
  for (std::size_t j = 0; j < c; ++j) {
    const double* row = data + seeds[j] * d;
    std::copy(row, row + d, centroids.data() + j * d);
  }

  std::vector<std::uint32_t> indices(m);
  std::vector<double> gram;
  std::vector<double> errors(m);
  std::vector<double> sums(c * d);
  std::vector<std::size_t> counts(c);
  std::vector<std::size_t> order;

  double prev = 0.0;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    std::vector<double> cnorm = codeword_norms(centroids.data(), c, d);
    assign_nearest(data, m, centroids.data(), c, d, cnorm, gram,
                   indices.data());

    double distortion = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* x = data + i * d;
      const double* cw = centroids.data() + indices[i] * d;
      double acc = 0.0;
      for (std::size_t p = 0; p < d; ++p) {
        const double diff = x[p] - cw[p];
        acc += diff * diff;
      }
      errors[i] = acc;
      distortion += acc;
    }
    distortion /= static_cast<double>(m);

    if (iter > 0 && prev - distortion <= rel_tol * prev) {
      ++iter;
      break;
    }
    prev = distortion;

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      const double* x = data + i * d;
      double* acc = sums.data() + indices[i] * d;
      for (std::size_t p = 0; p < d; ++p) acc[p] += x[p];
      ++counts[indices[i]];
    }

    std::vector<std::size_t> dead;
    for (std::size_t j = 0; j < c; ++j) {
      if (counts[j] == 0) {
        dead.push_back(j);
        continue;
      }
      const double inv = 1.0 / static_cast<double>(counts[j]);
      double* cw = centroids.data() + j * d;
      const double* acc = sums.data() + j * d;
      for (std::size_t p = 0; p < d; ++p) cw[p] = acc[p] * inv;
    }

    if (!dead.empty()) {
      // Reseed dead codewords to the worst-quantized vectors, largest
      // error first; deterministic order for reproducibility.
      order.resize(m);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) {
                  if (errors[a] != errors[b]) return errors[a] > errors[b];
                  return a < b;
                });
      for (std::size_t k = 0; k < dead.size() && k < m; ++k) {
        const double* row = data + order[k] * d;
        std::copy(row, row + d, centroids.data() + dead[k] * d);
      }
    }
  }
  if (iters_run != nullptr) *iters_run = iter;
  return centroids;
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void put_f32(std::vector<unsigned char>& out, float v) {
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
  out.push_back(static_cast<unsigned char>(bits & 0xff));
  out.push_back(static_cast<unsigned char>((bits >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((bits >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((bits >> 24) & 0xff));
}

class ByteCursor {
 public:
  ByteCursor(const unsigned char* data, std::size_t size)
      : data_(data), size_(size) {}

  std::size_t remaining() const { return size_ - pos_; }

  void need(std::size_t n, const char* field) const {
    if (remaining() < n) {
      throw DataError(std::string("model file truncated in ") + field);
    }
  }

  std::uint8_t u8(const char* field) {
    need(1, field);
    return data_[pos_++];
  }

  std::uint16_t u16(const char* field) {
    need(2, field);
    const std::uint16_t v = static_cast<std::uint16_t>(
        data_[pos_] | (static_cast<std::uint16_t>(data_[pos_ + 1]) << 8));
    pos_ += 2;
    return v;
  }

  float f32(const char* field) {
    need(4, field);
    const std::uint32_t bits =
        static_cast<std::uint32_t>(data_[pos_]) |
        (static_cast<std::uint32_t>(data_[pos_ + 1]) << 8) |
        (static_cast<std::uint32_t>(data_[pos_ + 2]) << 16) |
        (static_cast<std::uint32_t>(data_[pos_ + 3]) << 24);
    pos_ += 4;
    return std::bit_cast<float>(bits);
  }

  void bytes(char* out, std::size_t n, const char* field) {
    need(n, field);
    std::copy(data_ + pos_, data_ + pos_ + n, out);
    pos_ += n;
  }

 private:
  const unsigned char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace

std::span<const float> RvqModel::codeword(int stage, int index) const {
  const std::vector<float>& book = codebooks[stage];
  return std::span<const float>(book.data() +
                                    static_cast<std::size_t>(index) * dim,
                                static_cast<std::size_t>(dim));
}

void validate(const RvqModel& model) {
  if (model.dim < 1 || model.codebook_size < 1 || model.num_stages < 1) {
    throw DataError("rvq model: dimensions must be positive");
  }
  if (static_cast<int>(model.codebooks.size()) != model.num_stages) {
    throw DataError("rvq model: stage count does not match codebook list");
  }
  const std::size_t expect = static_cast<std::size_t>(model.codebook_size) *
                             static_cast<std::size_t>(model.dim);
  for (const std::vector<float>& book : model.codebooks) {
    if (book.size() != expect) {
      throw DataError("rvq model: codebook has wrong shape");
    }
    for (float v : book) {
      if (!std::isfinite(v)) {
        throw DataError("rvq model: non-finite codeword entry");
      }
    }
  }
}

NearestResult vq_nearest(std::span<const double> x,
                         std::span<const float> codebook, int codebook_size) {
  const std::size_t d = x.size();
  if (d == 0 || codebook_size < 1 ||
      codebook.size() != static_cast<std::size_t>(codebook_size) * d) {
    throw ArgumentError("vq_nearest: codebook shape does not match input");
  }
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < static_cast<std::size_t>(codebook_size); ++j) {
    const float* row = codebook.data() + j * d;
    double cnorm = 0.0;
    double dot = 0.0;
    for (std::size_t p = 0; p < d; ++p) {
      const double cv = static_cast<double>(row[p]);
      cnorm += cv * cv;
      dot += x[p] * cv;
    }
    const double score = cnorm - 2.0 * dot;
    if (score < best_score) {
      best_score = score;
      best = j;
    }
  }
  NearestResult result;
  result.index = static_cast<std::uint32_t>(best);
  result.residual.resize(d);
  const float* row = codebook.data() + best * d;
  for (std::size_t p = 0; p < d; ++p) {
    result.residual[p] = x[p] - static_cast<double>(row[p]);
  }
  return result;
}

TokenFrame rvq_encode(std::span<const double> x, const RvqModel& model,
                      int depth) {
  if (x.size() != static_cast<std::size_t>(model.dim)) {
    throw ArgumentError("rvq_encode: vector dimension " +
                        std::to_string(x.size()) + " does not match model " +
                        std::to_string(model.dim));
  }
  std::vector<TokenFrame> frames = rvq_encode_batch(x, model, depth);
  return std::move(frames.front());
}

std::vector<TokenFrame> rvq_encode_batch(std::span<const double> data,
                                         const RvqModel& model, int depth) {
  const std::size_t d = static_cast<std::size_t>(model.dim);
  if (depth < 1 || depth > model.num_stages) {
    throw ArgumentError("rvq encode: depth " + std::to_string(depth) +
                        " outside [1, " + std::to_string(model.num_stages) +
                        "]");
  }
  if (d == 0 || data.size() % d != 0) {
    throw ArgumentError("rvq encode: batch size is not a multiple of dim");
  }
  const std::size_t m = data.size() / d;
  const std::size_t c = static_cast<std::size_t>(model.codebook_size);

  std::vector<TokenFrame> frames(m);
  for (TokenFrame& f : frames) f.indices.resize(depth);
  if (m == 0) return frames;

  std::vector<double> residual(data.begin(), data.end());
  std::vector<std::uint32_t> indices(m);
  std::vector<double> gram;
  for (int q = 0; q < depth; ++q) {
    const std::vector<double> book = widen(model.codebooks[q]);
    const std::vector<double> cnorm = codeword_norms(book.data(), c, d);
    assign_nearest(residual.data(), m, book.data(), c, d, cnorm, gram,
                   indices.data());
    for (std::size_t i = 0; i < m; ++i) {
      frames[i].indices[q] = indices[i];
      double* r = residual.data() + i * d;
      const double* cw = book.data() + indices[i] * d;
      for (std::size_t p = 0; p < d; ++p) r[p] -= cw[p];
    }
  }
  return frames;
}

std::vector<double> rvq_decode(const TokenFrame& tokens,
                               const RvqModel& model) {
  if (tokens.indices.size() > static_cast<std::size_t>(model.num_stages)) {
    throw ArgumentError("rvq_decode: token frame has more stages than model");
  }
  std::vector<double> out(model.dim, 0.0);
  for (std::size_t q = 0; q < tokens.indices.size(); ++q) {
    const std::uint32_t index = tokens.indices[q];
    if (index >= static_cast<std::uint32_t>(model.codebook_size)) {
      throw CorruptStreamError(
          "token index " + std::to_string(index) + " out of range for stage " +
          std::to_string(q) + " (codebook size " +
          std::to_string(model.codebook_size) + ")");
    }
    const std::span<const float> cw =
        model.codeword(static_cast<int>(q), static_cast<int>(index));
    for (int p = 0; p < model.dim; ++p) {
      out[p] += static_cast<double>(cw[p]);
    }
  }
  return out;
}

RvqModel rvq_train(std::span<const double> data, int dim,
                   const TrainOptions& options, TrainReport* report) {
  if (dim < 1 || dim > 65535) {
    throw ArgumentError("rvq_train: dim must be in [1, 65535]");
  }
  if (options.codebook_size < 1 || options.codebook_size > 65535) {
    throw ArgumentError("rvq_train: codebook_size must be in [1, 65535]");
  }
  if (options.num_stages < 1 || options.num_stages > 255) {
    throw ArgumentError("rvq_train: num_stages must be in [1, 255]");
  }
  if (options.max_iters < 1 || !(options.rel_tol >= 0.0)) {
    throw ArgumentError("rvq_train: bad iteration controls");
  }
  const std::size_t d = static_cast<std::size_t>(dim);
  if (data.size() % d != 0) {
    throw ArgumentError("rvq_train: data size is not a multiple of dim");
  }
  const std::size_t m = data.size() / d;
  const std::size_t c = static_cast<std::size_t>(options.codebook_size);
  if (m < c) {
    throw DataError("rvq_train: " + std::to_string(m) +
                    " training vectors cannot fill a codebook of " +
                    std::to_string(c));
  }
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw ArgumentError("rvq_train: non-finite training data");
    }
  }

  RvqModel model;
  model.dim = dim;
  model.codebook_size = options.codebook_size;
  model.num_stages = options.num_stages;
  model.trained_on = options.trained_on;
  model.codebooks.reserve(options.num_stages);
  if (report != nullptr) {
    report->stage_mse.clear();
    report->stage_iters.clear();
  }

  std::mt19937_64 rng(options.seed);
  std::vector<double> residual(data.begin(), data.end());
  std::vector<std::uint32_t> indices(m);
  std::vector<double> gram;

  for (int q = 0; q < options.num_stages; ++q) {
    int iters = 0;
    std::vector<double> centroids =
        train_stage(residual.data(), m, d, c, options.max_iters,
                    options.rel_tol, rng, &iters);

    // The stored model is float; re-assign against the rounded book so
    // the residuals passed to the next stage (and the reported
    // distortion) match what the saved model reproduces.
    std::vector<float> book(centroids.begin(), centroids.end());
    const std::vector<double> wide = widen(book);
    const std::vector<double> cnorm = codeword_norms(wide.data(), c, d);
    assign_nearest(residual.data(), m, wide.data(), c, d, cnorm, gram,
                   indices.data());
    double mse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double* r = residual.data() + i * d;
      const double* cw = wide.data() + indices[i] * d;
      double acc = 0.0;
      for (std::size_t p = 0; p < d; ++p) {
        r[p] -= cw[p];
        acc += r[p] * r[p];
      }
      mse += acc;
    }
    mse /= static_cast<double>(m);

    model.codebooks.push_back(std::move(book));
    if (report != nullptr) {
      report->stage_mse.push_back(mse);
      report->stage_iters.push_back(iters);
    }
  }
  return model;
}

UsageStats codebook_usage(const std::vector<TokenFrame>& tokens,
                          const RvqModel& model) {
  UsageStats stats;
  stats.histograms.assign(
      model.num_stages,
      std::vector<std::int64_t>(model.codebook_size, 0));
  stats.perplexity.assign(model.num_stages, 0.0);
  for (const TokenFrame& frame : tokens) {
    const std::size_t depth =
        std::min(frame.indices.size(),
                 static_cast<std::size_t>(model.num_stages));
    for (std::size_t q = 0; q < depth; ++q) {
      const std::uint32_t index = frame.indices[q];
      if (index < static_cast<std::uint32_t>(model.codebook_size)) {
        ++stats.histograms[q][index];
      }
    }
  }
  for (int q = 0; q < model.num_stages; ++q) {
    std::int64_t total = 0;
    for (std::int64_t n : stats.histograms[q]) total += n;
    if (total == 0) continue;
    double entropy = 0.0;
    for (std::int64_t n : stats.histograms[q]) {
      if (n == 0) continue;
      const double p = static_cast<double>(n) / static_cast<double>(total);
      entropy -= p * std::log(p);
    }
    stats.perplexity[q] =
        std::exp(entropy) / static_cast<double>(model.codebook_size);
  }
  return stats;
}

void save_model(const RvqModel& model, const std::string& path) {
  validate(model);
  if (model.trained_on.size() > 65535) {
    throw ArgumentError("save_model: provenance string too long");
  }
  std::vector<unsigned char> out;
  out.reserve(16 + static_cast<std::size_t>(model.num_stages) *
                       static_cast<std::size_t>(model.codebook_size) *
                       static_cast<std::size_t>(model.dim) * 4);
  out.insert(out.end(), kModelMagic, kModelMagic + 4);
  out.push_back(kModelVersion);
  put_u16(out, static_cast<std::uint16_t>(model.dim));
  put_u16(out, static_cast<std::uint16_t>(model.codebook_size));
  out.push_back(static_cast<unsigned char>(model.num_stages));
  for (const std::vector<float>& book : model.codebooks) {
    for (float v : book) put_f32(out, v);
  }
  if (!model.trained_on.empty()) {
    put_u16(out, static_cast<std::uint16_t>(model.trained_on.size()));
    out.insert(out.end(), model.trained_on.begin(), model.trained_on.end());
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open model file for writing: " + path);
  }
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw IoError("write failed on model file: " + path);
  }
}

RvqModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open model file: " + path);
  }
  std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) {
    throw IoError("read failed on model file: " + path);
  }

  ByteCursor cursor(bytes.data(), bytes.size());
  char magic[4];
  cursor.bytes(magic, 4, "magic");
  if (!std::equal(magic, magic + 4, kModelMagic)) {
    throw DataError("model file: bad magic");
  }
  const std::uint8_t version = cursor.u8("version");
  if (version != kModelVersion) {
    throw DataError("model file: unsupported version " +
                    std::to_string(version));
  }
  RvqModel model;
  model.dim = cursor.u16("dim");
  model.codebook_size = cursor.u16("codebook_size");
  model.num_stages = cursor.u8("num_stages");
  if (model.dim < 1 || model.codebook_size < 1 || model.num_stages < 1) {
    throw DataError("model file: zero dimension field");
  }
  const std::size_t per_book = static_cast<std::size_t>(model.codebook_size) *
                               static_cast<std::size_t>(model.dim);
  model.codebooks.resize(model.num_stages);
  for (int q = 0; q < model.num_stages; ++q) {
    std::vector<float>& book = model.codebooks[q];
    book.resize(per_book);
    cursor.need(per_book * 4, "codebooks");
    for (std::size_t i = 0; i < per_book; ++i) {
      book[i] = cursor.f32("codebooks");
    }
  }
  if (cursor.remaining() > 0) {
    const std::uint16_t len = cursor.u16("provenance length");
    if (cursor.remaining() != len) {
      throw DataError("model file: provenance length mismatch");
    }
    model.trained_on.resize(len);
    cursor.bytes(model.trained_on.data(), len, "provenance");
  }
  validate(model);
  return model;
}

}  // namespace sgeq
