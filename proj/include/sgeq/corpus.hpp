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

#ifndef SGEQ_CORPUS_HPP_
#define SGEQ_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace sgeq {

struct Utterance {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 16000;
  std::string id;
};

// Strict PCM16 mono RIFF/WAVE reader; samples are scaled by 1/32768.
// Rejects compressed, multichannel, or non-16-bit files, and, when
// expected_rate is nonzero, files at any other sample rate. No
// resampling ever happens. Throws IoError on filesystem problems,
// DataError on malformed or unsupported content.
Utterance read_wav(const std::string& path, int expected_rate = 0);

// PCM16 mono writer: clamps to [-1, 1], scales by 32768, rounds half
// away from zero, and clamps the top code to 32767.
void write_wav(const Utterance& utterance, const std::string& path);

enum class SynthKind {
  kSine,              // 440 Hz, amplitude 0.5
  kChirp,             // 100 Hz to 4000 Hz linear sweep, amplitude 0.5
  kNoiseBurst,        // noise bursts separated by exact digital silence
  kSpeechLikeAmNoise  // resonator-filtered noise under a slow amplitude
                      // envelope, with occasional hard silences
};

// Deterministic synthetic test signals. The generated PCM values sum
// to exactly zero (any DC from rounding is spread over the loud
// samples), and silences are aligned to multiples of `hop_align`
// samples so analysis frames are either fully silent or carry real
// energy. Throws ArgumentError on a non-positive duration.
Utterance synth_signal(SynthKind kind, double duration_s, std::uint64_t seed,
                       int sample_rate = 16000, int hop_align = 320);

// Sorted .wav paths directly inside dir. Throws IoError when dir is
// missing or unreadable.
std::vector<std::string> list_wavs(const std::string& dir);

// Reads every .wav in dir (sorted by name) at the expected rate.
// Throws DataError when the directory holds no wav files.
std::vector<Utterance> load_corpus(const std::string& dir,
                                   int expected_rate = 16000);

}  // namespace sgeq

#endif  // SGEQ_CORPUS_HPP_
