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

#ifndef SGEQ_BITSTREAM_HPP_
#define SGEQ_BITSTREAM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "sgeq/rvq.hpp"

namespace sgeq {

// Wire layout, all multi-byte integers little-endian:
//   offset 0  "SGEQ"            magic
//          4  u8   version      currently 1
//          5  u8   mode         0 baseline, 1 equalizer
//          6  u32  sample_rate
//         10  u16  frame_length N
//         12  u16  hop          H
//         14  u16  codebook_size C
//         16  u8   num_stages   tokens per frame
//         17  u8   gain_bits    bits per gain code (used when mode = 1)
//         18  u16  mu           companding constant
//         20  u32  num_frames
//         24  u32  original_length  samples to emit after decoding
// Payload starts at byte 28: per frame, the gain code (gain_bits bits,
// equalizer mode only) then num_stages token indices of
// ceil(log2(codebook_size)) bits each, packed MSB-first and zero-padded
// to a whole byte at the end of the stream.
struct StreamHeader {
  std::uint8_t version = 1;
  std::uint8_t mode = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t frame_length = 0;
  std::uint16_t hop = 0;
  std::uint16_t codebook_size = 0;
  std::uint8_t num_stages = 0;
  std::uint8_t gain_bits = 0;
  std::uint16_t mu = 0;
  std::uint32_t num_frames = 0;
  std::uint32_t original_length = 0;
};

inline constexpr std::size_t kStreamHeaderBytes = 28;

struct EncodedStream {
  StreamHeader header;
  // One code per frame in equalizer mode, empty in baseline mode.
  std::vector<std::uint32_t> gain_codes;
  // num_frames frames of num_stages indices each.
  std::vector<TokenFrame> tokens;
};

// Bits needed for a token index in [0, codebook_size); 0 when the
// codebook has a single entry.
int token_bits(int codebook_size);

// Exact payload size implied by a header, in bits and in bytes.
std::uint64_t payload_bits(const StreamHeader& header);
std::uint64_t payload_bytes(const StreamHeader& header);

// Deterministic byte encoding. Throws ArgumentError when the stream
// violates its own header (frame counts, stage counts, field ranges).
std::vector<std::uint8_t> serialize(const EncodedStream& stream);

// Exact inverse of serialize. Throws CorruptStreamError naming the
// failing field: bad magic, unsupported version, bad mode, truncated
// payload, trailing bytes, out-of-range token or gain code, nonzero
// padding bits.
EncodedStream deserialize(std::span<const std::uint8_t> bytes);

}  // namespace sgeq

#endif  // SGEQ_BITSTREAM_HPP_
