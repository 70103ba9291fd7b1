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

// End-to-end acceptance gate. Trains real models on the bundled corpus
// at the reference configuration (N=640, H=320, beta=4, C up to 1024)
// and checks one criterion per numbered line; any [FAIL] line makes the
// process exit nonzero. Usage:
//
//   sgeq_acceptance <path-to-sgeq-cli> <corpus-root>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sgeq/bitstream.hpp"
#include "sgeq/codec.hpp"
#include "sgeq/corpus.hpp"
#include "sgeq/error.hpp"
#include "sgeq/framing.hpp"
#include "sgeq/gainquant.hpp"
#include "sgeq/metrics.hpp"
#include "sgeq/rvq.hpp"
#include "sgeq/shapegain.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& message) {
    if (!cond && ok) {
      ok = false;
      detail = message;
    }
  }

  // Success-path summary text; a recorded failure message wins.
  void summary(const std::string& text) {
    if (ok) detail = text;
  }
};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

sgeq::CodecConfig reference_config(sgeq::CodecMode mode, int codebook_size,
                                   int num_stages) {
  sgeq::CodecConfig cfg;
  cfg.window.length = 640;
  cfg.window.hop = 320;
  cfg.window.beta = 4.0;
  cfg.transform = sgeq::Transform::kDct;
  cfg.codebook_size = codebook_size;
  cfg.num_stages = num_stages;
  cfg.gain_quant.bits = 8;
  cfg.gain_quant.mu = 255.0;
  cfg.mode = mode;
  cfg.sample_rate = 16000;
  return cfg;
}

std::vector<double> alpha_grid_13() {
  std::vector<double> grid;
  for (int a = -12; a <= 12; a += 2) grid.push_back(a);
  return grid;
}

std::vector<double> centered_copy(const std::vector<double>& signal) {
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(signal.size());
  std::vector<double> out(signal);
  for (double& v : out) v -= mean;
  return out;
}

std::vector<double> corpus_embeddings(const std::vector<sgeq::Utterance>& corpus,
                                      const sgeq::CodecConfig& cfg) {
  std::vector<double> data;
  for (const sgeq::Utterance& utt : corpus) {
    sgeq::FrameGrid frames;
    if (cfg.mode == sgeq::CodecMode::kEqualizer) {
      const sgeq::EqualizedSignal eq = sgeq::equalize(utt.samples, cfg.window);
      frames = sgeq::segment(eq.samples, cfg.window);
    } else {
      frames = sgeq::segment(centered_copy(utt.samples), cfg.window);
    }
    const sgeq::EmbeddingGrid grid = sgeq::encode_frames(frames, cfg);
    data.insert(data.end(), grid.values.begin(), grid.values.end());
  }
  return data;
}

sgeq::RvqModel train_reference_model(const std::vector<double>& embeddings,
                                     const sgeq::CodecConfig& cfg,
                                     const char* label) {
  sgeq::TrainOptions options;
  options.codebook_size = cfg.codebook_size;
  options.num_stages = cfg.num_stages;
  options.seed = 2026;
  options.trained_on =
      cfg.mode == sgeq::CodecMode::kEqualizer ? "equalized" : "raw";

  const auto start = Clock::now();
  sgeq::RvqModel model =
      sgeq::rvq_train(embeddings, cfg.window.length, options);
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("note: trained %s (C=%d, stages=%d) in %.1f s\n", label,
              cfg.codebook_size, cfg.num_stages, elapsed);
  std::fflush(stdout);
  return model;
}

// Mean SI-SDR of decoded output against the centered scaled input,
// averaged over the 13-point gain grid and the corpus.
double mean_si_sdr(const std::vector<sgeq::Utterance>& corpus,
                   const sgeq::CodecConfig& cfg, const sgeq::RvqModel& model) {
  double total = 0.0;
  std::int64_t count = 0;
  for (const double alpha : alpha_grid_13()) {
    for (const sgeq::Utterance& utt : corpus) {
      const std::vector<double> scaled = sgeq::gain_scale(utt.samples, alpha);
      const sgeq::EncodedStream stream =
          sgeq::encode_signal(scaled, utt.sample_rate, cfg, model);
      const std::vector<double> decoded =
          sgeq::decode_signal(stream, cfg, model);
      total += sgeq::si_sdr(centered_copy(scaled), decoded);
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return "<unreadable:" + path.string() + ">";
  return std::string((std::istreambuf_iterator<char>(file)),
                     std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------
// Criterion 1: the two bitrate anchors.

Result check_bitrate_anchors() {
  Result r;
  const std::int64_t base =
      sgeq::bitrate(reference_config(sgeq::CodecMode::kBaseline, 1024, 8));
  const std::int64_t eq =
      sgeq::bitrate(reference_config(sgeq::CodecMode::kEqualizer, 128, 8));
  r.require(base == 4000, "baseline C=1024 reports " + std::to_string(base));
  r.require(eq == 3200, "equalizer C=128 reports " + std::to_string(eq));
  r.summary("baseline C=1024: " + std::to_string(base) +
            " bps, equalizer C=128: " + std::to_string(eq) + " bps");
  return r;
}

// ---------------------------------------------------------------------
// Criterion 2: the equalized path is invariant to global gain.

Result check_equalizer_invariance(const std::vector<sgeq::Utterance>& corpus,
                                  const sgeq::RvqModel& eq_model) {
  Result r;
  const sgeq::CodecConfig cfg =
      reference_config(sgeq::CodecMode::kEqualizer, 1024, 8);
  const std::vector<double> grid = alpha_grid_13();

  double min_dcs = 1.0;
  double max_wave_err = 0.0;
  for (const sgeq::Utterance& utt : corpus) {
    const std::vector<sgeq::Utterance> one = {utt};
    const sgeq::SensitivityProfile profile =
        sgeq::sensitivity_profile(one, grid, cfg, eq_model);
    const sgeq::EqualizedSignal at_zero =
        sgeq::equalize(utt.samples, cfg.window);
    for (std::size_t a = 0; a < grid.size(); ++a) {
      if (grid[a] == 0.0) continue;
      min_dcs = std::min(min_dcs, profile.dcs[a]);
      r.require(profile.dcs[a] >= 0.99,
                utt.id + " at " + fmt(grid[a]) + " dB: dcs " +
                    fmt(profile.dcs[a]));

      const sgeq::EqualizedSignal at_alpha = sgeq::equalize(
          sgeq::gain_scale(utt.samples, grid[a]), cfg.window);
      double err = 0.0;
      for (std::size_t i = 0; i < at_zero.samples.size(); ++i) {
        err = std::max(err,
                       std::abs(at_alpha.samples[i] - at_zero.samples[i]));
      }
      max_wave_err = std::max(max_wave_err, err);
      r.require(err <= 1e-6, utt.id + " at " + fmt(grid[a]) +
                                 " dB: waveform err " + fmt(err));
    }
  }
  r.summary("min dcs " + fmt(min_dcs) + ", max equalized-waveform err " +
            fmt(max_wave_err));
  return r;
}

// ---------------------------------------------------------------------
// Criterion 3: baseline tokens destabilize as |alpha| grows.

Result check_baseline_sensitivity(const std::vector<sgeq::Utterance>& corpus,
                                  const sgeq::RvqModel& base_model) {
  Result r;
  const sgeq::CodecConfig cfg =
      reference_config(sgeq::CodecMode::kBaseline, 1024, 8);
  const std::vector<double> grid = alpha_grid_13();
  const sgeq::SensitivityProfile profile =
      sgeq::sensitivity_profile(corpus, grid, cfg, base_model);

  const auto dcs_at = [&](double alpha) {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      if (grid[a] == alpha) return profile.dcs[a];
    }
    return -1.0;
  };

  r.require(dcs_at(4.0) <= 0.9, "dcs(+4 dB) = " + fmt(dcs_at(4.0)));
  r.require(dcs_at(-4.0) <= 0.9, "dcs(-4 dB) = " + fmt(dcs_at(-4.0)));
  for (int a = 2; a <= 10; a += 2) {
    r.require(dcs_at(a + 2) <= dcs_at(a) + 1e-12,
              "dcs rises from " + std::to_string(a) + " to " +
                  std::to_string(a + 2) + " dB");
    r.require(dcs_at(-(a + 2)) <= dcs_at(-a) + 1e-12,
              "dcs rises from " + std::to_string(-a) + " to " +
                  std::to_string(-(a + 2)) + " dB");
  }
  r.summary("dcs(+-4 dB) = " + fmt(dcs_at(4.0)) + " / " + fmt(dcs_at(-4.0)) +
            ", dcs(+-12 dB) = " + fmt(dcs_at(12.0)) + " / " +
            fmt(dcs_at(-12.0)));
  return r;
}

// ---------------------------------------------------------------------
// Criterion 4: windowing, overlap-add, and gain restoration integrity.

Result check_analysis_synthesis(
    const std::vector<sgeq::Utterance>& everything) {
  Result r;
  const sgeq::WindowSpec spec = reference_config(
      sgeq::CodecMode::kEqualizer, 1024, 8).window;

  const std::vector<double> profile = sgeq::cola_profile(spec, 16000);
  double cola_err = 0.0;
  for (int i = spec.hop; i < 16000 - spec.hop; ++i) {
    cola_err = std::max(cola_err, std::abs(profile[i] - 1.0));
  }
  r.require(cola_err <= 1e-12, "interior window tiling off by " +
                                   fmt(cola_err));

  double ola_err = 0.0;
  double min_restore = 1e9;
  std::string worst_id;
  for (const sgeq::Utterance& utt : everything) {
    const std::vector<double> back =
        sgeq::overlap_add(sgeq::segment(utt.samples, spec));
    double err = 0.0;
    for (std::size_t i = 0; i < utt.samples.size(); ++i) {
      err = std::max(err, std::abs(back[i] - utt.samples[i]));
    }
    ola_err = std::max(ola_err, err);

    const sgeq::EqualizedSignal eq = sgeq::equalize(utt.samples, spec);
    const std::vector<double> restored =
        sgeq::deequalize(eq.samples, eq.envelope);
    const double score =
        sgeq::si_sdr(centered_copy(utt.samples), restored);
    std::printf("note: equalize/deequalize on %-12s %8.2f dB\n",
                utt.id.c_str(), score);
    if (score < min_restore) {
      min_restore = score;
      worst_id = utt.id;
    }
  }
  r.require(ola_err <= 1e-10,
            "overlap-add reconstruction err " + fmt(ola_err));
  r.require(min_restore >= 30.0,
            "gain restoration " + fmt(min_restore) + " dB on " + worst_id);
  r.summary("tiling err " + fmt(cola_err) + ", overlap-add err " +
            fmt(ola_err) + ", min restoration " + fmt(min_restore) + " dB (" +
            worst_id + ")");
  return r;
}

// ---------------------------------------------------------------------
// Criterion 5: scalar and vector quantizer correctness.

Result check_quantizers(const std::vector<sgeq::Utterance>& corpus,
                        const sgeq::RvqModel& eq_model) {
  Result r;

  sgeq::GainQuantConfig gq;
  gq.bits = 8;
  gq.mu = 255.0;
  gq.full_scale = 1.0;
  const double half_step = 0.5 / 255.0;
  double inv_err = 0.0;
  double companded_err = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double x = static_cast<double>(i) / 100000.0;
    inv_err = std::max(
        inv_err,
        std::abs(sgeq::mu_expand(sgeq::mu_compress(x, 255.0), 255.0) - x));
    const std::uint32_t code = sgeq::quantize_gain(x, gq);
    companded_err = std::max(
        companded_err, std::abs(sgeq::mu_compress(x, 255.0) -
                                static_cast<double>(code) / 255.0));
  }
  r.require(inv_err <= 1e-12, "compander inversion err " + fmt(inv_err));
  r.require(companded_err <= half_step + 1e-12,
            "companded-domain err " + fmt(companded_err));

  std::mt19937_64 rng(20260822);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int vq_mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 4 + static_cast<int>(rng() % 29);
    const int c = 64;
    std::vector<float> codebook(static_cast<std::size_t>(c) * dim);
    for (float& v : codebook) v = static_cast<float>(gauss(rng));
    std::vector<double> x(dim);
    for (double& v : x) v = gauss(rng);

    const sgeq::NearestResult got = sgeq::vq_nearest(x, codebook, c);
    int best = 0;
    double best_d = 1e300;
    for (int k = 0; k < c; ++k) {
      double d = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double diff =
            x[i] - static_cast<double>(codebook[k * dim + i]);
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (static_cast<int>(got.index) != best) ++vq_mismatches;
  }
  r.require(vq_mismatches == 0,
            std::to_string(vq_mismatches) + " nearest-neighbor mismatches");

  // Reconstruction error of the deep model must not grow with depth,
  // measured on 1000 held-out equalized frames.
  const sgeq::CodecConfig cfg =
      reference_config(sgeq::CodecMode::kEqualizer, 1024, 8);
  std::vector<double> data = corpus_embeddings(corpus, cfg);
  const int dim = cfg.window.length;
  const std::size_t vectors =
      std::min<std::size_t>(1000, data.size() / static_cast<std::size_t>(dim));
  data.resize(vectors * static_cast<std::size_t>(dim));
  const std::vector<sgeq::TokenFrame> tokens =
      sgeq::rvq_encode_batch(data, eq_model, eq_model.num_stages);

  std::vector<double> approx(data.size(), 0.0);
  double prev_mse = 1e300;
  bool monotone = true;
  double final_mse = 0.0;
  for (int depth = 1; depth <= eq_model.num_stages; ++depth) {
    for (std::size_t m = 0; m < vectors; ++m) {
      const std::span<const float> word =
          eq_model.codeword(depth - 1, tokens[m].indices[depth - 1]);
      for (int i = 0; i < dim; ++i) {
        approx[m * static_cast<std::size_t>(dim) + i] +=
            static_cast<double>(word[i]);
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double d = data[i] - approx[i];
      total += d * d;
    }
    const double mse = total / static_cast<double>(vectors);
    if (mse > prev_mse + 1e-12) monotone = false;
    prev_mse = mse;
    final_mse = mse;
  }
  r.require(monotone, "reconstruction error grew with depth");

  r.summary("inversion err " + fmt(inv_err) + ", companded err " +
            fmt(companded_err) + ", vq mismatches " +
            std::to_string(vq_mismatches) + ", depth-16 frame mse " +
            fmt(final_mse));
  return r;
}

// ---------------------------------------------------------------------
// Criteria 6 and 7: rate-distortion and depth trends.

struct SweepScores {
  // mean SI-SDR keyed by (equalizer?, codebook size, depth)
  std::map<std::tuple<bool, int, int>, double> mean;

  double at(bool eq, int c, int depth) const {
    return mean.at(std::make_tuple(eq, c, depth));
  }
};

SweepScores run_sweeps(
    const std::vector<sgeq::Utterance>& corpus,
    const std::map<std::pair<bool, int>, const sgeq::RvqModel*>& models) {
  SweepScores scores;
  const std::vector<int> depth_list = {1, 2, 4, 6, 8, 16};
  for (const bool eq : {false, true}) {
    const sgeq::CodecMode mode =
        eq ? sgeq::CodecMode::kEqualizer : sgeq::CodecMode::kBaseline;
    for (const int c : {128, 256, 512, 1024}) {
      const sgeq::RvqModel* model = models.at(std::make_pair(eq, c));
      const std::vector<int> depths =
          c == 1024 ? depth_list : std::vector<int>{8};
      for (const int depth : depths) {
        const sgeq::CodecConfig cfg = reference_config(mode, c, depth);
        const double score = mean_si_sdr(corpus, cfg, *model);
        scores.mean[std::make_tuple(eq, c, depth)] = score;
        std::printf("note: mean si-sdr %-9s C=%-4d depth=%-2d %8.3f dB\n",
                    eq ? "equalizer" : "baseline", c, depth, score);
        std::fflush(stdout);
      }
    }
  }
  return scores;
}

Result check_rate_distortion(const SweepScores& scores) {
  Result r;
  // Matched total bitrates: equalizer at C pairs with baseline at 2C
  // (the 8 gain bits per frame buy one doubling of the codebook).
  const std::vector<std::pair<int, int>> matched = {
      {128, 256}, {256, 512}, {512, 1024}};
  for (const auto& [eq_c, base_c] : matched) {
    const std::int64_t eq_bps = sgeq::bitrate(
        reference_config(sgeq::CodecMode::kEqualizer, eq_c, 8));
    const std::int64_t base_bps = sgeq::bitrate(
        reference_config(sgeq::CodecMode::kBaseline, base_c, 8));
    r.require(eq_bps == base_bps,
              "bitrates not matched: " + std::to_string(eq_bps) + " vs " +
                  std::to_string(base_bps));
    const double eq_score = scores.at(true, eq_c, 8);
    const double base_score = scores.at(false, base_c, 8);
    r.require(eq_score >= base_score,
              "at " + std::to_string(eq_bps) + " bps: equalizer " +
                  fmt(eq_score) + " dB < baseline " + fmt(base_score) +
                  " dB");
  }
  const double eq_small = scores.at(true, 128, 8);
  const double base_big = scores.at(false, 1024, 8);
  r.require(eq_small >= base_big - 1.0,
            "equalizer@3200 bps " + fmt(eq_small) +
                " dB under baseline@4000 bps " + fmt(base_big) + " dB - 1");
  r.summary("equalizer@3200 " + fmt(eq_small) + " dB vs baseline@4000 " +
            fmt(base_big) + " dB");
  return r;
}

Result check_depth_trend(const SweepScores& scores) {
  Result r;
  const std::vector<int> depths = {1, 2, 4, 6, 8, 16};
  for (const bool eq : {false, true}) {
    for (std::size_t k = 0; k + 1 < depths.size(); ++k) {
      const double lo = scores.at(eq, 1024, depths[k]);
      const double hi = scores.at(eq, 1024, depths[k + 1]);
      r.require(hi >= lo - 1e-9,
                std::string(eq ? "equalizer" : "baseline") +
                    " quality drops from depth " +
                    std::to_string(depths[k]) + " (" + fmt(lo) + ") to " +
                    std::to_string(depths[k + 1]) + " (" + fmt(hi) + ")");
    }
  }
  for (const int d : depths) {
    const double eq_score = scores.at(true, 1024, d);
    const double base_score = scores.at(false, 1024, d);
    r.require(eq_score >= base_score,
              "at depth " + std::to_string(d) + ": equalizer " +
                  fmt(eq_score) + " dB < baseline " + fmt(base_score) +
                  " dB");
  }
  r.summary("depth 1: " + fmt(scores.at(true, 1024, 1)) + "/" +
            fmt(scores.at(false, 1024, 1)) + " dB, depth 16: " +
            fmt(scores.at(true, 1024, 16)) + "/" +
            fmt(scores.at(false, 1024, 16)) + " dB (equalizer/baseline)");
  return r;
}

// ---------------------------------------------------------------------
// Criterion 8: bitstream round trips and typed corruption rejection.

sgeq::EncodedStream random_stream(std::mt19937_64& rng) {
  sgeq::EncodedStream s;
  s.header.mode = static_cast<std::uint8_t>(rng() % 2);
  s.header.sample_rate = 8000 + static_cast<std::uint32_t>(rng() % 40000);
  s.header.frame_length = static_cast<std::uint16_t>(2 + 2 * (rng() % 500));
  s.header.hop = static_cast<std::uint16_t>(
      1 + rng() % s.header.frame_length);
  s.header.codebook_size = static_cast<std::uint16_t>(1 + rng() % 3000);
  s.header.num_stages = static_cast<std::uint8_t>(1 + rng() % 12);
  s.header.gain_bits = static_cast<std::uint8_t>(1 + rng() % 16);
  s.header.mu = static_cast<std::uint16_t>(1 + rng() % 65535);
  const std::uint32_t frames = 1 + static_cast<std::uint32_t>(rng() % 40);
  s.header.num_frames = frames;
  s.header.original_length = static_cast<std::uint32_t>(rng() % 1000000);
  for (std::uint32_t m = 0; m < frames; ++m) {
    sgeq::TokenFrame frame;
    for (int q = 0; q < s.header.num_stages; ++q) {
      frame.indices.push_back(
          static_cast<std::uint32_t>(rng() % s.header.codebook_size));
    }
    s.tokens.push_back(frame);
    if (s.header.mode == 1) {
      const std::uint64_t top = 1ull << s.header.gain_bits;
      s.gain_codes.push_back(static_cast<std::uint32_t>(rng() % top));
    }
  }
  return s;
}

bool streams_equal(const sgeq::EncodedStream& a, const sgeq::EncodedStream& b) {
  if (a.header.version != b.header.version || a.header.mode != b.header.mode ||
      a.header.sample_rate != b.header.sample_rate ||
      a.header.frame_length != b.header.frame_length ||
      a.header.hop != b.header.hop ||
      a.header.codebook_size != b.header.codebook_size ||
      a.header.num_stages != b.header.num_stages ||
      a.header.gain_bits != b.header.gain_bits || a.header.mu != b.header.mu ||
      a.header.num_frames != b.header.num_frames ||
      a.header.original_length != b.header.original_length) {
    return false;
  }
  if (a.gain_codes != b.gain_codes || a.tokens.size() != b.tokens.size()) {
    return false;
  }
  for (std::size_t m = 0; m < a.tokens.size(); ++m) {
    if (a.tokens[m].indices != b.tokens[m].indices) return false;
  }
  return true;
}

template <typename Mutate>
bool rejected_as_corrupt(const std::vector<std::uint8_t>& bytes,
                         Mutate mutate) {
  std::vector<std::uint8_t> copy = bytes;
  mutate(copy);
  try {
    (void)sgeq::deserialize(copy);
  } catch (const sgeq::CorruptStreamError&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

Result check_bitstream() {
  Result r;
  std::mt19937_64 rng(987654321);
  int failures = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const sgeq::EncodedStream s = random_stream(rng);
    const sgeq::EncodedStream back = sgeq::deserialize(sgeq::serialize(s));
    if (!streams_equal(s, back)) ++failures;
  }
  r.require(failures == 0,
            std::to_string(failures) + " round trips were lossy");

  // A small fixed stream whose one payload byte is fully mapped:
  // baseline, C=3 (2-bit tokens), one stage, one frame, token 2, so the
  // payload byte is 10 000000.
  sgeq::EncodedStream probe;
  probe.header.mode = 0;
  probe.header.sample_rate = 16000;
  probe.header.frame_length = 640;
  probe.header.hop = 320;
  probe.header.codebook_size = 3;
  probe.header.num_stages = 1;
  probe.header.gain_bits = 8;
  probe.header.mu = 255;
  probe.header.num_frames = 1;
  probe.header.original_length = 320;
  probe.tokens.push_back(sgeq::TokenFrame{{2}});
  const std::vector<std::uint8_t> bytes = sgeq::serialize(probe);
  r.require(bytes.size() == sgeq::kStreamHeaderBytes + 1,
            "probe stream has unexpected size");
  r.require(bytes.back() == 0x80, "probe payload byte is not 0x80");

  r.require(rejected_as_corrupt(bytes, [](auto& b) { b[0] ^= 0x40; }),
            "bad magic accepted");
  r.require(rejected_as_corrupt(bytes, [](auto& b) { b[4] = 2; }),
            "bad version accepted");
  r.require(rejected_as_corrupt(bytes, [](auto& b) { b.resize(20); }),
            "truncated header accepted");
  r.require(rejected_as_corrupt(bytes, [](auto& b) { b.pop_back(); }),
            "truncated payload accepted");
  r.require(rejected_as_corrupt(bytes, [](auto& b) { b.push_back(0); }),
            "trailing bytes accepted");
  r.require(rejected_as_corrupt(bytes, [](auto& b) { b.back() = 0xC0; }),
            "out-of-range token accepted");
  r.require(rejected_as_corrupt(bytes, [](auto& b) { b.back() = 0x81; }),
            "nonzero padding accepted");
  r.summary("10000 random round trips, 7 corruption classes rejected");
  return r;
}

// ---------------------------------------------------------------------
// Criterion 9: bit-identical outputs across CLI runs.

Result check_determinism(const std::string& cli, const std::string& corpus) {
  Result r;
  const fs::path dir = fs::temp_directory_path() / "sgeq_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::string tiny = " --frame-len 64 --hop 32 --codebook-size 16"
                           " --stages 2 --seed 11";
  const std::string test_dir = corpus + "/test";
  const std::string wav = test_dir + "/speech_01.wav";

  const auto twice = [&](const std::string& what, const std::string& args_a,
                         const std::string& args_b, const fs::path& out_a,
                         const fs::path& out_b) {
    const int rc_a = run_cli(cli, args_a);
    const int rc_b = run_cli(cli, args_b);
    r.require(rc_a == 0 && rc_b == 0, what + " run failed (" +
                                          std::to_string(rc_a) + ", " +
                                          std::to_string(rc_b) + ")");
    const std::string a = read_file(out_a);
    const std::string b = read_file(out_b);
    r.require(!a.empty() && a == b, what + " outputs differ across runs");
  };

  const fs::path model_a = dir / "model_a.sgrq";
  const fs::path model_b = dir / "model_b.sgrq";
  twice("train",
        "train --corpus " + test_dir + " --out " + model_a.string() + tiny,
        "train --corpus " + test_dir + " --out " + model_b.string() + tiny,
        model_a, model_b);

  const fs::path stream_a = dir / "a.sgeq";
  const fs::path stream_b = dir / "b.sgeq";
  twice("encode",
        "encode --model " + model_a.string() + " --in " + wav + " --out " +
            stream_a.string() + tiny,
        "encode --model " + model_a.string() + " --in " + wav + " --out " +
            stream_b.string() + tiny,
        stream_a, stream_b);

  const fs::path base_model = dir / "base.sgrq";
  const int rc = run_cli(cli, "train --mode baseline --corpus " + test_dir +
                                  " --out " + base_model.string() + tiny);
  r.require(rc == 0, "baseline train failed");

  const fs::path sens_a = dir / "sens_a.csv";
  const fs::path sens_b = dir / "sens_b.csv";
  const std::string sens_args = "sensitivity --model-baseline " +
                                base_model.string() + " --model-equalizer " +
                                model_a.string() + " --corpus " + test_dir +
                                " --alpha-grid -4:4:4" + tiny + " --out ";
  twice("sensitivity", sens_args + sens_a.string(),
        sens_args + sens_b.string(), sens_a, sens_b);

  const fs::path sweep_a = dir / "sweep_a.csv";
  const fs::path sweep_b = dir / "sweep_b.csv";
  const std::string sweep_args =
      "rdsweep --corpus " + test_dir + " --test-corpus " + test_dir +
      " --codebook-sizes 8,16 --stages-list 1,2 --alpha-grid -4:4:4"
      " --frame-len 64 --hop 32 --seed 11 --out ";
  twice("rdsweep", sweep_args + sweep_a.string(),
        sweep_args + sweep_b.string(), sweep_a, sweep_b);

  r.summary("model, stream, and CSV outputs byte-identical");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  setenv("OPENBLAS_NUM_THREADS", "1", 1);
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <sgeq-cli> <corpus-root>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::string corpus_root = argv[2];

  struct Line {
    const char* name;
    Result result;
  };
  std::vector<Line> lines;

  try {
    const std::vector<sgeq::Utterance> train_set =
        sgeq::load_corpus(corpus_root + "/train", 16000);
    const std::vector<sgeq::Utterance> test_set =
        sgeq::load_corpus(corpus_root + "/test", 16000);
    std::vector<sgeq::Utterance> everything = train_set;
    everything.insert(everything.end(), test_set.begin(), test_set.end());
    std::printf("note: corpus loaded, %zu train + %zu test utterances\n",
                train_set.size(), test_set.size());
    std::fflush(stdout);

    // One 16-stage model per (mode, C=1024); its first q stages are
    // exactly the q-stage model for the same seed, so every shallower
    // depth reuses it. Smaller codebooks get 8-stage models.
    const std::vector<double> eq_data = corpus_embeddings(
        train_set, reference_config(sgeq::CodecMode::kEqualizer, 1024, 8));
    const std::vector<double> base_data = corpus_embeddings(
        train_set, reference_config(sgeq::CodecMode::kBaseline, 1024, 8));
    std::printf("note: %zu training frames per mode\n", eq_data.size() / 640);
    std::fflush(stdout);

    std::map<std::pair<bool, int>, sgeq::RvqModel> models;
    for (const bool eq : {false, true}) {
      const std::vector<double>& data = eq ? eq_data : base_data;
      const sgeq::CodecMode mode =
          eq ? sgeq::CodecMode::kEqualizer : sgeq::CodecMode::kBaseline;
      for (const int c : {128, 256, 512, 1024}) {
        const int depth = c == 1024 ? 16 : 8;
        const std::string label =
            std::string(eq ? "equalizer" : "baseline") + " model";
        models.emplace(
            std::make_pair(eq, c),
            train_reference_model(data, reference_config(mode, c, depth),
                                  label.c_str()));
      }
    }
    std::map<std::pair<bool, int>, const sgeq::RvqModel*> model_ptrs;
    for (const auto& [key, model] : models) model_ptrs[key] = &model;
    const sgeq::RvqModel& eq_deep = models.at(std::make_pair(true, 1024));
    const sgeq::RvqModel& base_deep = models.at(std::make_pair(false, 1024));

    lines.push_back({"C1: bitrate anchors", check_bitrate_anchors()});
    lines.push_back({"C2: equalized path is gain invariant",
                     check_equalizer_invariance(test_set, eq_deep)});
    lines.push_back({"C3: baseline tokens are gain sensitive",
                     check_baseline_sensitivity(test_set, base_deep)});
    lines.push_back({"C4: analysis-synthesis integrity",
                     check_analysis_synthesis(everything)});
    lines.push_back({"C5: quantizer correctness",
                     check_quantizers(test_set, eq_deep)});

    const SweepScores scores = run_sweeps(test_set, model_ptrs);
    lines.push_back({"C6: equalizer beats baseline at matched bitrates",
                     check_rate_distortion(scores)});
    lines.push_back({"C7: quality is non-decreasing in depth",
                     check_depth_trend(scores)});
    lines.push_back({"C8: bitstream round trips and rejection",
                     check_bitstream()});
    lines.push_back({"C9: deterministic outputs across runs",
                     check_determinism(cli, corpus_root)});
  } catch (const std::exception& e) {
    std::printf("[FAIL] setup: %s\n", e.what());
    return 1;
  }

  bool all_ok = true;
  for (const Line& line : lines) {
    if (line.result.ok) {
      std::printf("[PASS] %s (%s)\n", line.name, line.result.detail.c_str());
    } else {
      all_ok = false;
      std::printf("[FAIL] %s: %s\n", line.name, line.result.detail.c_str());
    }
  }
  return all_ok ? 0 : 1;
}
