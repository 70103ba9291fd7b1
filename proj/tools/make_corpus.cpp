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

// Writes the bundled synthetic corpus: a training split and a smaller
// evaluation split, all deterministic for fixed seeds so that every
// build produces byte-identical WAV files.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgeq/corpus.hpp"
#include "sgeq/error.hpp"

namespace {

struct Recipe {
  std::string name;
  sgeq::SynthKind kind;
  double duration_s;
  std::uint64_t seed;
};

const std::vector<Recipe> kTrainRecipes = {
    {"speech_01", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 101},
    {"speech_02", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 102},
    {"speech_03", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 103},
    {"speech_04", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 104},
    {"speech_05", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 105},
    {"speech_06", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 106},
    {"speech_07", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 107},
    {"speech_08", sgeq::SynthKind::kSpeechLikeAmNoise, 10.0, 108},
    {"tone_sine", sgeq::SynthKind::kSine, 4.0, 1},
    {"tone_chirp", sgeq::SynthKind::kChirp, 4.0, 1},
    {"bursts_01", sgeq::SynthKind::kNoiseBurst, 6.0, 109},
    {"bursts_02", sgeq::SynthKind::kNoiseBurst, 6.0, 110},
};

const std::vector<Recipe> kTestRecipes = {
    {"speech_01", sgeq::SynthKind::kSpeechLikeAmNoise, 4.0, 201},
    {"speech_02", sgeq::SynthKind::kSpeechLikeAmNoise, 4.0, 202},
    {"speech_03", sgeq::SynthKind::kSpeechLikeAmNoise, 4.0, 203},
    {"speech_04", sgeq::SynthKind::kSpeechLikeAmNoise, 4.0, 204},
    {"speech_05", sgeq::SynthKind::kSpeechLikeAmNoise, 4.0, 205},
    {"tone_sine", sgeq::SynthKind::kSine, 2.0, 1},
    {"tone_chirp", sgeq::SynthKind::kChirp, 2.0, 1},
    {"bursts_01", sgeq::SynthKind::kNoiseBurst, 4.0, 206},
};

void write_split(const std::string& dir, const std::vector<Recipe>& recipes,
                 int sample_rate, int hop) {
  std::filesystem::create_directories(dir);
  for (const Recipe& recipe : recipes) {
    sgeq::Utterance utt = sgeq::synth_signal(recipe.kind, recipe.duration_s,
                                             recipe.seed, sample_rate, hop);
    utt.id = recipe.name;
    const std::string path = dir + "/" + recipe.name + ".wav";
    sgeq::write_wav(utt, path);
    std::printf("%s: %zu samples\n", path.c_str(), utt.samples.size());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled synthetic corpus"};
  std::string out_dir;
  int sample_rate = 16000;
  int hop = 320;
  app.add_option("--out", out_dir, "Corpus root directory")->required();
  app.add_option("--sample-rate", sample_rate, "Sample rate in Hz")
      ->capture_default_str();
  app.add_option("--hop", hop, "Hop used for silence alignment")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    write_split(out_dir + "/train", kTrainRecipes, sample_rate, hop);
    write_split(out_dir + "/test", kTestRecipes, sample_rate, hop);
  } catch (const sgeq::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
