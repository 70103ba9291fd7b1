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

// Command-line front end: training, coding, and the sweep protocols.
// Everything prints CSV or terse status lines; plotting is left to
// user scripts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
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

struct CodecFlags {
  std::string mode = "equalizer";
  std::string transform = "dct";
  int frame_len = 640;
  int hop = 320;
  double beta = 4.0;
  int codebook_size = 1024;
  int stages = 8;
  int gain_bits = 8;
  double mu = 255.0;
  int sample_rate = 16000;
};

void add_codec_flags(CLI::App* cmd, CodecFlags* f, bool with_mode) {
  if (with_mode) {
    cmd->add_option("--mode", f->mode, "Coding mode")
        ->check(CLI::IsMember({"baseline", "equalizer"}))
        ->capture_default_str();
  }
  cmd->add_option("--transform", f->transform, "Per-frame transform")
      ->check(CLI::IsMember({"dct", "identity"}))
      ->capture_default_str();
  cmd->add_option("--frame-len", f->frame_len, "Analysis frame length N")
      ->capture_default_str();
  cmd->add_option("--hop", f->hop, "Analysis hop H")->capture_default_str();
  cmd->add_option("--beta", f->beta, "KBD window shape parameter")
      ->capture_default_str();
  cmd->add_option("--codebook-size", f->codebook_size,
                  "Codewords per RVQ stage C")
      ->capture_default_str();
  cmd->add_option("--stages", f->stages, "RVQ stages N_Q")
      ->capture_default_str();
  cmd->add_option("--gain-bits", f->gain_bits, "Bits per gain code")
      ->capture_default_str();
  cmd->add_option("--mu", f->mu, "Companding constant")
      ->capture_default_str();
  cmd->add_option("--sample-rate", f->sample_rate, "Sample rate in Hz")
      ->capture_default_str();
}

sgeq::CodecConfig to_config(const CodecFlags& f) {
  sgeq::CodecConfig cfg;
  cfg.mode = f.mode == "equalizer" ? sgeq::CodecMode::kEqualizer
                                   : sgeq::CodecMode::kBaseline;
  cfg.transform = f.transform == "dct" ? sgeq::Transform::kDct
                                       : sgeq::Transform::kIdentity;
  cfg.window.length = f.frame_len;
  cfg.window.hop = f.hop;
  cfg.window.beta = f.beta;
  cfg.codebook_size = f.codebook_size;
  cfg.num_stages = f.stages;
  cfg.gain_quant.bits = f.gain_bits;
  cfg.gain_quant.mu = f.mu;
  cfg.sample_rate = f.sample_rate;
  sgeq::validate(cfg);
  return cfg;
}

// "start:step:stop" (inclusive) or a comma-separated list of dB values.
std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> out;
  const auto parse_value = [&](const std::string& token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      throw sgeq::ConfigError("cannot parse alpha grid value '" + token +
                              "'");
    }
  };

  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ':')) parts.push_back(token);
    if (parts.size() != 3) {
      throw sgeq::ConfigError("alpha grid must be start:step:stop, got '" +
                              text + "'");
    }
    const double start = parse_value(parts[0]);
    const double step = parse_value(parts[1]);
    const double stop = parse_value(parts[2]);
    if (!(step > 0.0) || stop < start) {
      throw sgeq::ConfigError("alpha grid needs step > 0 and stop >= start");
    }
    const int count = static_cast<int>(std::lround((stop - start) / step)) + 1;
    for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    return out;
  }

  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(parse_value(token));
  }
  if (out.empty()) {
    throw sgeq::ConfigError("alpha grid is empty: '" + text + "'");
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw sgeq::ConfigError(std::string("cannot parse ") + what +
                              " value '" + token + "'");
    }
  }
  if (out.empty()) {
    throw sgeq::ConfigError(std::string(what) + " list is empty");
  }
  return out;
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

std::vector<double> centered_copy(const std::vector<double>& signal) {
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(signal.size());
  std::vector<double> out(signal);
  for (double& v : out) v -= mean;
  return out;
}

// The analysis-side embeddings of a whole corpus, concatenated row-major,
// as the configured mode would present them to the quantizer.
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

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw sgeq::IoError("cannot open file: " + path);
  }
  std::vector<std::uint8_t> bytes(
      (std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) {
    throw sgeq::IoError("read failed: " + path);
  }
  return bytes;
}

void write_file_bytes(const std::string& path,
                      const std::vector<std::uint8_t>& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw sgeq::IoError("cannot open file for writing: " + path);
  }
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  file.flush();
  if (!file) {
    throw sgeq::IoError("write failed: " + path);
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(out_path, std::ios::trunc);
  if (!file) {
    throw sgeq::IoError("cannot open output file: " + out_path);
  }
  file << text;
  file.flush();
  if (!file) {
    throw sgeq::IoError("write failed: " + out_path);
  }
}

sgeq::RvqModel train_model(const std::vector<sgeq::Utterance>& corpus,
                           const sgeq::CodecConfig& cfg, std::uint64_t seed,
                           int max_iters, double rel_tol,
                           sgeq::TrainReport* report) {
  const std::vector<double> data = corpus_embeddings(corpus, cfg);
  sgeq::TrainOptions options;
  options.codebook_size = cfg.codebook_size;
  options.num_stages = cfg.num_stages;
  options.seed = seed;
  options.max_iters = max_iters;
  options.rel_tol = rel_tol;
  options.trained_on =
      cfg.mode == sgeq::CodecMode::kEqualizer ? "equalized" : "raw";
  return sgeq::rvq_train(data, cfg.window.length, options, report);
}

int cmd_train(const CodecFlags& flags, const std::string& corpus_dir,
              const std::string& out_path, std::uint64_t seed, int max_iters,
              double rel_tol) {
  const sgeq::CodecConfig cfg = to_config(flags);
  const std::vector<sgeq::Utterance> corpus =
      sgeq::load_corpus(corpus_dir, cfg.sample_rate);

  sgeq::TrainReport report;
  const sgeq::RvqModel model =
      train_model(corpus, cfg, seed, max_iters, rel_tol, &report);
  sgeq::save_model(model, out_path);

  for (std::size_t q = 0; q < report.stage_mse.size(); ++q) {
    std::printf("stage %zu: mse %s (%d iterations)\n", q + 1,
                fmt(report.stage_mse[q]).c_str(), report.stage_iters[q]);
  }
  std::printf("wrote %s: dim=%d C=%d stages=%d trained_on=%s\n",
              out_path.c_str(), model.dim, model.codebook_size,
              model.num_stages, model.trained_on.c_str());
  return 0;
}

int cmd_encode(const CodecFlags& flags, const std::string& model_path,
               const std::string& in_path, const std::string& out_path) {
  const sgeq::CodecConfig cfg = to_config(flags);
  const sgeq::RvqModel model = sgeq::load_model(model_path);
  const sgeq::Utterance utt = sgeq::read_wav(in_path, cfg.sample_rate);

  const sgeq::EncodedStream stream =
      sgeq::encode_signal(utt.samples, utt.sample_rate, cfg, model);
  const std::vector<std::uint8_t> bytes = sgeq::serialize(stream);
  write_file_bytes(out_path, bytes);

  std::printf("encoded %zu samples into %u frames (%zu bytes): %s\n",
              utt.samples.size(), stream.header.num_frames, bytes.size(),
              out_path.c_str());
  return 0;
}

int cmd_decode(const CodecFlags& flags, const std::string& model_path,
               const std::string& in_path, const std::string& out_path) {
  const sgeq::CodecConfig cfg = to_config(flags);
  const sgeq::RvqModel model = sgeq::load_model(model_path);
  const sgeq::EncodedStream stream =
      sgeq::deserialize(read_file_bytes(in_path));

  sgeq::Utterance utt;
  utt.samples = sgeq::decode_signal(stream, cfg, model);
  utt.sample_rate = cfg.sample_rate;
  utt.id = std::filesystem::path(out_path).stem().string();
  sgeq::write_wav(utt, out_path);

  std::printf("decoded %u frames to %zu samples: %s\n",
              stream.header.num_frames, utt.samples.size(), out_path.c_str());
  return 0;
}

int cmd_eval(const CodecFlags& flags, const std::string& model_path,
             const std::string& corpus_dir, const std::string& out_path) {
  const sgeq::CodecConfig cfg = to_config(flags);
  const sgeq::RvqModel model = sgeq::load_model(model_path);
  const std::vector<sgeq::Utterance> corpus =
      sgeq::load_corpus(corpus_dir, cfg.sample_rate);

  std::string csv = "utterance,si_sdr_db\n";
  double total = 0.0;
  for (const sgeq::Utterance& utt : corpus) {
    const sgeq::EncodedStream stream =
        sgeq::encode_signal(utt.samples, utt.sample_rate, cfg, model);
    const std::vector<double> decoded =
        sgeq::decode_signal(stream, cfg, model);
    const double score = sgeq::si_sdr(centered_copy(utt.samples), decoded);
    total += score;
    csv += utt.id + "," + fmt(score) + "\n";
  }
  csv += "MEAN," + fmt(total / static_cast<double>(corpus.size())) + "\n";
  emit_text(csv, out_path);
  return 0;
}

std::string sensitivity_rows(const char* mode_name,
                             const sgeq::SensitivityProfile& profile) {
  std::string rows;
  for (std::size_t a = 0; a < profile.alphas.size(); ++a) {
    rows += std::string(mode_name) + "," + fmt(profile.alphas[a]) + "," +
            fmt(profile.norm_ratio[a]) + "," + fmt(profile.cosine[a]) + "," +
            fmt(profile.dcs[a]);
    for (double v : profile.dcs_stage[a]) {
      rows += "," + fmt(v);
    }
    rows += "\n";
  }
  return rows;
}

int cmd_sensitivity(const CodecFlags& flags,
                    const std::string& model_baseline_path,
                    const std::string& model_equalizer_path,
                    const std::string& corpus_dir,
                    const std::string& alpha_grid,
                    const std::string& out_path) {
  const std::vector<double> alphas = parse_alpha_grid(alpha_grid);
  if (std::find(alphas.begin(), alphas.end(), 0.0) == alphas.end()) {
    throw sgeq::ConfigError("alpha grid must contain the 0 dB reference");
  }

  CodecFlags base_flags = flags;
  base_flags.mode = "baseline";
  const sgeq::CodecConfig base_cfg = to_config(base_flags);
  CodecFlags eq_flags = flags;
  eq_flags.mode = "equalizer";
  const sgeq::CodecConfig eq_cfg = to_config(eq_flags);

  const std::vector<sgeq::Utterance> corpus =
      sgeq::load_corpus(corpus_dir, base_cfg.sample_rate);
  const sgeq::RvqModel base_model = sgeq::load_model(model_baseline_path);
  const sgeq::RvqModel eq_model = sgeq::load_model(model_equalizer_path);

  std::string csv = "mode,alpha_db,norm_ratio,cosine,dcs";
  for (int q = 1; q <= base_cfg.num_stages; ++q) {
    csv += ",dcs_stage_" + std::to_string(q);
  }
  csv += "\n";
  csv += sensitivity_rows(
      "baseline", sgeq::sensitivity_profile(corpus, alphas, base_cfg,
                                            base_model));
  csv += sensitivity_rows(
      "equalizer", sgeq::sensitivity_profile(corpus, alphas, eq_cfg,
                                             eq_model));
  emit_text(csv, out_path);
  return 0;
}

int cmd_rdsweep(const CodecFlags& flags, const std::string& corpus_dir,
                const std::string& test_corpus_dir,
                const std::string& model_dir, const std::string& alpha_grid,
                const std::string& codebook_list,
                const std::string& stages_list, std::uint64_t seed,
                int max_iters, double rel_tol, const std::string& out_path) {
  const std::vector<double> alphas = parse_alpha_grid(alpha_grid);
  if (std::find(alphas.begin(), alphas.end(), 0.0) == alphas.end()) {
    throw sgeq::ConfigError("alpha grid must contain the 0 dB reference");
  }
  const std::vector<int> codebooks =
      parse_int_list(codebook_list, "codebook size");
  std::vector<int> depths = parse_int_list(stages_list, "stage count");
  std::sort(depths.begin(), depths.end());
  const int max_depth = depths.back();

  const std::vector<sgeq::Utterance> train_corpus =
      sgeq::load_corpus(corpus_dir, flags.sample_rate);
  const std::vector<sgeq::Utterance> test_corpus =
      sgeq::load_corpus(test_corpus_dir, flags.sample_rate);
  if (!model_dir.empty()) {
    std::filesystem::create_directories(model_dir);
  }

  std::string csv = "mode,codebook_size,num_stages,bitrate_bps,"
                    "mean_si_sdr_db,dcs\n";

  for (const char* mode_name : {"baseline", "equalizer"}) {
    for (const int c : codebooks) {
      CodecFlags train_flags = flags;
      train_flags.mode = mode_name;
      train_flags.codebook_size = c;
      train_flags.stages = max_depth;
      const sgeq::CodecConfig train_cfg = to_config(train_flags);

      // One deep model per (mode, C); earlier stages are shared with
      // every shallower depth, so slicing is exact.
      sgeq::RvqModel model;
      std::string cache_path;
      if (!model_dir.empty()) {
        cache_path = model_dir + "/rvq_" + mode_name + "_c" +
                     std::to_string(c) + "_q" + std::to_string(max_depth) +
                     "_seed" + std::to_string(seed) + ".sgrq";
      }
      if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        model = sgeq::load_model(cache_path);
        if (model.dim != train_cfg.window.length ||
            model.codebook_size != c || model.num_stages < max_depth) {
          throw sgeq::ConfigError("cached model does not fit the sweep: " +
                                  cache_path);
        }
      } else {
        model = train_model(train_corpus, train_cfg, seed, max_iters,
                            rel_tol, nullptr);
        if (!cache_path.empty()) {
          sgeq::save_model(model, cache_path);
        }
      }

      for (const int depth : depths) {
        CodecFlags run_flags = train_flags;
        run_flags.stages = depth;
        const sgeq::CodecConfig cfg = to_config(run_flags);

        double score_sum = 0.0;
        std::int64_t scored = 0;
        for (const double alpha : alphas) {
          for (const sgeq::Utterance& utt : test_corpus) {
            const std::vector<double> scaled =
                sgeq::gain_scale(utt.samples, alpha);
            const sgeq::EncodedStream stream =
                sgeq::encode_signal(scaled, utt.sample_rate, cfg, model);
            const std::vector<double> decoded =
                sgeq::decode_signal(stream, cfg, model);
            score_sum += sgeq::si_sdr(centered_copy(scaled), decoded);
            ++scored;
          }
        }

        const sgeq::SensitivityProfile profile =
            sgeq::sensitivity_profile(test_corpus, alphas, cfg, model);
        double dcs_sum = 0.0;
        std::int64_t dcs_count = 0;
        for (std::size_t a = 0; a < profile.alphas.size(); ++a) {
          if (profile.alphas[a] == 0.0) continue;
          dcs_sum += profile.dcs[a];
          ++dcs_count;
        }
        const double dcs =
            dcs_count > 0 ? dcs_sum / static_cast<double>(dcs_count) : 1.0;

        csv += std::string(mode_name) + "," + std::to_string(c) + "," +
               std::to_string(depth) + "," +
               std::to_string(sgeq::bitrate(cfg)) + "," +
               fmt(score_sum / static_cast<double>(scored)) + "," + fmt(dcs) +
               "\n";
      }
    }
  }
  emit_text(csv, out_path);
  return 0;
}

int exit_code_for(const sgeq::Error& error) {
  if (dynamic_cast<const sgeq::ConfigError*>(&error)) return 2;
  if (dynamic_cast<const sgeq::CorruptStreamError*>(&error)) return 4;
  return 3;  // argument, data, io
}

}  // namespace

int main(int argc, char** argv) {
  // Dense kernels must run single-threaded for bit-reproducible sweeps.
  setenv("OPENBLAS_NUM_THREADS", "1", 1);

  CLI::App app{"Shape-gain equalizer codec toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a config file");

  CodecFlags flags;
  std::string corpus_dir;
  std::string test_corpus_dir;
  std::string model_path;
  std::string model_baseline_path;
  std::string model_equalizer_path;
  std::string model_dir;
  std::string in_path;
  std::string out_path;
  std::string alpha_grid = "-12:2:12";
  std::string codebook_list = "128,256,512,1024";
  std::string stages_list = "8";
  std::uint64_t seed = 0;
  int max_iters = 100;
  double rel_tol = 1e-5;

  CLI::App* train = app.add_subcommand("train", "Train RVQ codebooks");
  add_codec_flags(train, &flags, true);
  train->add_option("--corpus", corpus_dir, "Training corpus directory")
      ->required();
  train->add_option("--out", out_path, "Model file to write")->required();
  train->add_option("--seed", seed, "Training seed")->capture_default_str();
  train->add_option("--max-iters", max_iters, "Lloyd iteration cap")
      ->capture_default_str();
  train->add_option("--rel-tol", rel_tol, "Lloyd convergence tolerance")
      ->capture_default_str();

  CLI::App* encode = app.add_subcommand("encode", "Encode a WAV file");
  add_codec_flags(encode, &flags, true);
  encode->add_option("--model", model_path, "Model file")->required();
  encode->add_option("--in", in_path, "Input WAV")->required();
  encode->add_option("--out", out_path, "Output stream file")->required();
  encode->add_option("--seed", seed, "Run seed (no effect for this command)")
      ->capture_default_str();

  CLI::App* decode = app.add_subcommand("decode", "Decode a stream file");
  add_codec_flags(decode, &flags, true);
  decode->add_option("--model", model_path, "Model file")->required();
  decode->add_option("--in", in_path, "Input stream file")->required();
  decode->add_option("--out", out_path, "Output WAV")->required();
  decode->add_option("--seed", seed, "Run seed (no effect for this command)")
      ->capture_default_str();

  CLI::App* eval = app.add_subcommand("eval", "Score a corpus end to end");
  add_codec_flags(eval, &flags, true);
  eval->add_option("--model", model_path, "Model file")->required();
  eval->add_option("--corpus", corpus_dir, "Evaluation corpus directory")
      ->required();
  eval->add_option("--out", out_path, "CSV output (stdout when omitted)");
  eval->add_option("--seed", seed, "Run seed (no effect for this command)")
      ->capture_default_str();

  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "Gain-sensitivity profile, both modes");
  add_codec_flags(sensitivity, &flags, false);
  sensitivity
      ->add_option("--model-baseline", model_baseline_path,
                   "Baseline-mode model file")
      ->required();
  sensitivity
      ->add_option("--model-equalizer", model_equalizer_path,
                   "Equalizer-mode model file")
      ->required();
  sensitivity->add_option("--corpus", corpus_dir, "Corpus directory")
      ->required();
  sensitivity->add_option("--alpha-grid", alpha_grid,
                          "Gain grid: start:step:stop or comma list (dB)")
      ->capture_default_str();
  sensitivity->add_option("--out", out_path,
                          "CSV output (stdout when omitted)");
  sensitivity
      ->add_option("--seed", seed, "Run seed (no effect for this command)")
      ->capture_default_str();

  CLI::App* rdsweep =
      app.add_subcommand("rdsweep", "Rate-distortion sweep, both modes");
  add_codec_flags(rdsweep, &flags, false);
  rdsweep->add_option("--corpus", corpus_dir, "Training corpus directory")
      ->required();
  rdsweep->add_option("--test-corpus", test_corpus_dir,
                      "Evaluation corpus directory")
      ->required();
  rdsweep->add_option("--model-dir", model_dir,
                      "Cache directory for trained models");
  rdsweep->add_option("--alpha-grid", alpha_grid,
                      "Gain grid: start:step:stop or comma list (dB)")
      ->capture_default_str();
  rdsweep->add_option("--codebook-sizes", codebook_list,
                      "Comma list of codebook sizes")
      ->capture_default_str();
  rdsweep->add_option("--stages-list", stages_list,
                      "Comma list of RVQ depths")
      ->capture_default_str();
  rdsweep->add_option("--seed", seed, "Training seed")->capture_default_str();
  rdsweep->add_option("--max-iters", max_iters, "Lloyd iteration cap")
      ->capture_default_str();
  rdsweep->add_option("--rel-tol", rel_tol, "Lloyd convergence tolerance")
      ->capture_default_str();
  rdsweep->add_option("--out", out_path, "CSV output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(train)) {
      return cmd_train(flags, corpus_dir, out_path, seed, max_iters, rel_tol);
    }
    if (app.got_subcommand(encode)) {
      return cmd_encode(flags, model_path, in_path, out_path);
    }
    if (app.got_subcommand(decode)) {
      return cmd_decode(flags, model_path, in_path, out_path);
    }
    if (app.got_subcommand(eval)) {
      return cmd_eval(flags, model_path, corpus_dir, out_path);
    }
    if (app.got_subcommand(sensitivity)) {
      return cmd_sensitivity(flags, model_baseline_path, model_equalizer_path,
                             corpus_dir, alpha_grid, out_path);
    }
    if (app.got_subcommand(rdsweep)) {
      return cmd_rdsweep(flags, corpus_dir, test_corpus_dir, model_dir,
                         alpha_grid, codebook_list, stages_list, seed,
                         max_iters, rel_tol, out_path);
    }
  } catch (const sgeq::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;  // no subcommand selected
}
