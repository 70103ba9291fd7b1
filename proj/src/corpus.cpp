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

#include "sgeq/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sgeq/error.hpp"

namespace sgeq {
namespace {

double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_double(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform_range(rng, std::log(lo), std::log(hi)));
}

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

double gaussian(std::mt19937_64& rng) {
  double u1;
  do {
    u1 = uniform_double(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::int16_t to_pcm(double v) {
  const double clamped = std::clamp(v, -1.0, 1.0);
  const long scaled = std::lround(clamped * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768l, 32767l));
}

// Removes the DC left by rounding: distributes the PCM sum over the
// nonzero samples so the total is exactly zero while silent samples
// stay exactly zero. Samples pinned at the rail the correction pushes
// against cannot absorb their share, so the remainder is redistributed
// until the total reaches zero. Every applied unit moves the total
// strictly toward zero, so the loop terminates.
void zero_mean_pcm(std::vector<std::int16_t>& pcm) {
  while (true) {
    std::int64_t total = 0;
    for (std::int16_t v : pcm) total += v;
    if (total == 0) return;

    std::vector<std::size_t> active;
    active.reserve(pcm.size());
    for (std::size_t i = 0; i < pcm.size(); ++i) {
      if (pcm[i] == 0) continue;
      if (total < 0 && pcm[i] >= 32767) continue;
      if (total > 0 && pcm[i] <= -32768) continue;
      active.push_back(i);
    }
    if (active.empty()) return;

    const std::int64_t n = static_cast<std::int64_t>(active.size());
    const std::int64_t q = total / n;
    std::int64_t r = total - q * n;
    bool moved = false;
    for (std::size_t i : active) {
      std::int64_t v = pcm[i] - q;
      if (r > 0) {
        v -= 1;
        --r;
      } else if (r < 0) {
        v += 1;
        ++r;
      }
      v = std::clamp<std::int64_t>(v, -32768, 32767);
      if (v != pcm[i]) moved = true;
      pcm[i] = static_cast<std::int16_t>(v);
    }
    if (!moved) return;
  }
}

std::vector<double> synth_sine(std::size_t n, int rate) {
  std::vector<double> x(n);
  const double w = 2.0 * std::numbers::pi * 440.0 / rate;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 0.5 * std::sin(w * static_cast<double>(i));
  }
  return x;
}

std::vector<double> synth_chirp(std::size_t n, int rate) {
  std::vector<double> x(n);
  const double f0 = 100.0;
  const double f1 = 4000.0;
  const double duration = static_cast<double>(n) / rate;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double phase = 2.0 * std::numbers::pi *
                         (f0 * t + (f1 - f0) * t * t / (2.0 * duration));
    x[i] = 0.5 * std::sin(phase);
  }
  return x;
}

std::vector<double> synth_noise_burst(std::size_t n, int hop,
                                      std::mt19937_64& rng) {
  std::vector<double> x(n, 0.0);
  std::size_t block = static_cast<std::size_t>(hop);
  std::size_t pos = 2 * block;  // lead-in silence
  bool burst = true;
  while (pos < n) {
    const std::size_t len_blocks =
        burst ? 6 + uniform_index(rng, 9) : 2 + uniform_index(rng, 5);
    const std::size_t end = std::min(n, pos + len_blocks * block);
    if (burst) {
      const double amp = uniform_range(rng, 0.15, 0.5);
      for (std::size_t i = pos; i < end; ++i) {
        x[i] = 0.3 * amp * gaussian(rng);
      }
    }
    pos = end;
    burst = !burst;
  }
  return x;
}

// Two-pole resonator bank excited by white noise: a crude vowel-like
// carrier. Each "phone" has its own resonance pair; phones are joined
// by short linear crossfades at full level so the frame-gain envelope
// stays smooth.
std::vector<double> synth_carrier(std::size_t n, int rate,
                                  std::mt19937_64& rng) {
  const std::size_t fade = 320;     // 20 ms crossfade
  const std::size_t warmup = 480;   // discarded filter transient
  std::vector<double> carrier(n, 0.0);
  std::vector<double> weight(n, 0.0);
  std::size_t start = 0;
  while (start < n) {
    const std::size_t len =
        std::min<std::size_t>(n - start, (8 + uniform_index(rng, 11)) * 320);
    const std::size_t span = std::min(n - start, len + fade);

    const double f0 = log_uniform(rng, 300.0, 1100.0);
    const double f1 = log_uniform(rng, 1800.0, 3300.0);
    const double w0 = 2.0 * std::numbers::pi * f0 / rate;
    const double w1 = 2.0 * std::numbers::pi * f1 / rate;
    const double r0 = 0.992;
    const double r1 = 0.985;
    const double a0_1 = 2.0 * r0 * std::cos(w0);
    const double a0_2 = -r0 * r0;
    const double a1_1 = 2.0 * r1 * std::cos(w1);
    const double a1_2 = -r1 * r1;

    double y0_1 = 0.0, y0_2 = 0.0, y1_1 = 0.0, y1_2 = 0.0;
    std::vector<double> chunk(span);
    for (std::size_t i = 0; i < warmup + span; ++i) {
      const double e = gaussian(rng);
      const double y0 = a0_1 * y0_1 + a0_2 * y0_2 + e;
      y0_2 = y0_1;
      y0_1 = y0;
      const double y1 = a1_1 * y1_1 + a1_2 * y1_2 + e;
      y1_2 = y1_1;
      y1_1 = y1;
      if (i >= warmup) chunk[i - warmup] = y0 + 0.35 * y1;
    }
    double rms = 0.0;
    for (double v : chunk) rms += v * v;
    rms = std::sqrt(rms / static_cast<double>(span));
    const double norm = (rms > 0.0) ? 1.0 / rms : 0.0;

    for (std::size_t i = 0; i < span; ++i) {
      // Triangular weight over the crossfade regions at both ends.
      double w = 1.0;
      if (i < fade && start > 0) {
        w = static_cast<double>(i + 1) / static_cast<double>(fade + 1);
      }
      if (span - i <= fade && start + span < n) {
        w = std::min(w, static_cast<double>(span - i) /
                            static_cast<double>(fade + 1));
      }
      carrier[start + i] += norm * chunk[i] * w;
      weight[start + i] += w;
    }
    start += len;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] > 0.0) carrier[i] /= weight[i];
  }
  return carrier;
}

std::vector<double> synth_speech_like(std::size_t n, int rate, int hop,
                                      std::mt19937_64& rng) {
  std::vector<double> x = synth_carrier(n, rate, rng);

  // Slow log-amplitude drift: AR(1) control points every eight hops,
  // smoothstep-interpolated, giving a frame-gain coefficient of
  // variation around 0.6.
  const std::size_t step = 8 * static_cast<std::size_t>(hop);
  const std::size_t points = n / step + 2;
  std::vector<double> level(points);
  level[0] = 0.55 * gaussian(rng);
  for (std::size_t k = 1; k < points; ++k) {
    level[k] = 0.7 * level[k - 1] + 0.55 * std::sqrt(0.51) * gaussian(rng);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i / step;
    const double u = static_cast<double>(i - k * step) /
                     static_cast<double>(step);
    const double s = u * u * (3.0 - 2.0 * u);
    const double l = level[k] * (1.0 - s) + level[k + 1] * s;
    x[i] *= std::min(0.2 * std::exp(l), 0.75);
  }

  // Hard silences on the hop grid; the cut boundaries coincide with
  // analysis frame edges, so every frame is either fully silent or
  // solidly voiced.
  const std::size_t blocks = n / static_cast<std::size_t>(hop);
  std::size_t k = 2;
  while (k < blocks) {
    if (uniform_double(rng) < 0.05) {
      const std::size_t gap = 2 + uniform_index(rng, 4);
      const std::size_t lo = k * static_cast<std::size_t>(hop);
      const std::size_t hi =
          std::min(n, (k + gap) * static_cast<std::size_t>(hop));
      std::fill(x.begin() + lo, x.begin() + hi, 0.0);
      k += gap + 2;
    } else {
      ++k;
    }
  }
  return x;
}

}  // namespace

Utterance read_wav(const std::string& path, int expected_rate) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open wav file: " + path);
  }
  std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) {
    throw IoError("read failed on wav file: " + path);
  }

  auto u16 = [&](std::size_t pos) {
    return static_cast<std::uint16_t>(
        bytes[pos] | (static_cast<std::uint16_t>(bytes[pos + 1]) << 8));
  };
  auto u32 = [&](std::size_t pos) {
    return static_cast<std::uint32_t>(bytes[pos]) |
           (static_cast<std::uint32_t>(bytes[pos + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes[pos + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes[pos + 3]) << 24);
  };
  auto tag = [&](std::size_t pos, const char* name) {
    return pos + 4 <= bytes.size() &&
           std::equal(name, name + 4, bytes.begin() + pos);
  };

  if (bytes.size() < 12 || !tag(0, "RIFF") || !tag(8, "WAVE")) {
    throw DataError("not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  std::uint32_t rate = 0;
  std::size_t data_pos = 0;
  std::uint32_t data_size = 0;
  bool have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_size = u32(pos + 4);
    if (tag(pos, "fmt ")) {
      if (chunk_size < 16 || pos + 8 + 16 > bytes.size()) {
        throw DataError("wav fmt chunk truncated: " + path);
      }
      const std::uint16_t format = u16(pos + 8);
      const std::uint16_t channels = u16(pos + 10);
      rate = u32(pos + 12);
      const std::uint16_t bits = u16(pos + 22);
      if (format != 1) {
        throw DataError("wav is not uncompressed PCM (format " +
                        std::to_string(format) + "): " + path);
      }
      if (channels != 1) {
        throw DataError("wav has " + std::to_string(channels) +
                        " channels, expected mono: " + path);
      }
      if (bits != 16) {
        throw DataError("wav has " + std::to_string(bits) +
                        "-bit samples, expected 16: " + path);
      }
      have_fmt = true;
    } else if (tag(pos, "data")) {
      data_pos = pos + 8;
      data_size = chunk_size;
      have_data = true;
      break;
    }
    pos += 8 + chunk_size + (chunk_size & 1);
  }
  if (!have_fmt || !have_data) {
    throw DataError("wav missing fmt or data chunk: " + path);
  }
  if (data_size % 2 != 0 || data_pos + data_size > bytes.size()) {
    throw DataError("wav data chunk truncated or misaligned: " + path);
  }
  if (expected_rate > 0 && rate != static_cast<std::uint32_t>(expected_rate)) {
    throw DataError("wav sample rate " + std::to_string(rate) +
                    " Hz, expected " + std::to_string(expected_rate) +
                    " Hz (no resampling): " + path);
  }

  Utterance utterance;
  utterance.sample_rate = static_cast<int>(rate);
  utterance.id = std::filesystem::path(path).stem().string();
  const std::size_t count = data_size / 2;
  utterance.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint16_t raw = u16(data_pos + 2 * i);
    const std::int16_t value = static_cast<std::int16_t>(raw);
    utterance.samples[i] = static_cast<double>(value) / 32768.0;
  }
  return utterance;
}

void write_wav(const Utterance& utterance, const std::string& path) {
  const std::size_t n = utterance.samples.size();
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(2 * n);

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  auto push_u16 = [&](std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>(v >> 8));
  };
  auto push_u32 = [&](std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
  };
  auto push_tag = [&](const char* tag) {
    out.insert(out.end(), tag, tag + 4);
  };

  push_tag("RIFF");
  push_u32(36 + data_bytes);
  push_tag("WAVE");
  push_tag("fmt ");
  push_u32(16);
  push_u16(1);  // PCM
  push_u16(1);  // mono
  push_u32(static_cast<std::uint32_t>(utterance.sample_rate));
  push_u32(static_cast<std::uint32_t>(utterance.sample_rate) * 2);
  push_u16(2);   // block align
  push_u16(16);  // bits per sample
  push_tag("data");
  push_u32(data_bytes);
  for (double v : utterance.samples) {
    const std::int16_t pcm = to_pcm(v);
    push_u16(static_cast<std::uint16_t>(pcm));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open wav file for writing: " + path);
  }
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw IoError("write failed on wav file: " + path);
  }
}

Utterance synth_signal(SynthKind kind, double duration_s, std::uint64_t seed,
                       int sample_rate, int hop_align) {
  if (!(duration_s > 0.0)) {
    throw ArgumentError("synth_signal: duration must be positive");
  }
  if (sample_rate < 1 || hop_align < 1) {
    throw ArgumentError("synth_signal: bad sample rate or hop alignment");
  }
  const std::size_t n =
      static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  std::mt19937_64 rng(seed);

  std::vector<double> x;
  switch (kind) {
    case SynthKind::kSine:
      x = synth_sine(n, sample_rate);
      break;
    case SynthKind::kChirp:
      x = synth_chirp(n, sample_rate);
      break;
    case SynthKind::kNoiseBurst:
      x = synth_noise_burst(n, hop_align, rng);
      break;
    case SynthKind::kSpeechLikeAmNoise:
      x = synth_speech_like(n, sample_rate, hop_align, rng);
      break;
  }

  std::vector<std::int16_t> pcm(n);
  for (std::size_t i = 0; i < n; ++i) pcm[i] = to_pcm(x[i]);
  zero_mean_pcm(pcm);

  Utterance utterance;
  utterance.sample_rate = sample_rate;
  utterance.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    utterance.samples[i] = static_cast<double>(pcm[i]) / 32768.0;
  }
  return utterance;
}

std::vector<std::string> list_wavs(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("corpus directory missing or unreadable: " + dir);
  }
  std::vector<std::string> paths;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") {
      paths.push_back(entry.path().string());
    }
  }
  if (ec) {
    throw IoError("cannot iterate corpus directory: " + dir);
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<Utterance> load_corpus(const std::string& dir, int expected_rate) {
  const std::vector<std::string> paths = list_wavs(dir);
  if (paths.empty()) {
    throw DataError("no .wav files in corpus directory: " + dir);
  }
  std::vector<Utterance> corpus;
  corpus.reserve(paths.size());
  for (const std::string& path : paths) {
    corpus.push_back(read_wav(path, expected_rate));
  }
  return corpus;
}

}  // namespace sgeq
