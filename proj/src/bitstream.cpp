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

#include "sgeq/bitstream.hpp"

#include <bit>
#include <cstddef>
#include <string>

#include "sgeq/error.hpp"

namespace sgeq {
namespace {

constexpr char kStreamMagic[4] = {'S', 'G', 'E', 'Q'};
constexpr std::uint8_t kStreamVersion = 1;

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put(std::uint32_t value, int width) {
    for (int b = width - 1; b >= 0; --b) {
      if (bits_used_ == 0) {
        out_.push_back(0);
        bits_used_ = 8;
      }
      --bits_used_;
      if ((value >> b) & 1u) {
        out_.back() = static_cast<std::uint8_t>(out_.back() |
                                                (1u << bits_used_));
      }
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  int bits_used_ = 0;  // free bits remaining in the last byte
};

class BitReader {
 public:
  BitReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  std::uint32_t get(int width) {
    std::uint32_t value = 0;
    for (int b = 0; b < width; ++b) {
      const std::size_t byte = bit_pos_ >> 3;
      const int shift = 7 - static_cast<int>(bit_pos_ & 7);
      value = (value << 1) |
              (static_cast<std::uint32_t>(data_[byte] >> shift) & 1u);
      ++bit_pos_;
    }
    return value;
  }

  // True when every remaining bit in the buffer is zero (the pad).
  bool padding_clear() const {
    for (std::size_t p = bit_pos_; p < size_ * 8; ++p) {
      const std::size_t byte = p >> 3;
      const int shift = 7 - static_cast<int>(p & 7);
      if ((data_[byte] >> shift) & 1u) return false;
    }
    return true;
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t bit_pos_ = 0;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (static_cast<std::uint16_t>(p[1])
                                            << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void check_stream(const EncodedStream& stream) {
  const StreamHeader& h = stream.header;
  if (h.version != kStreamVersion) {
    throw ArgumentError("serialize: unsupported version " +
                        std::to_string(h.version));
  }
  if (h.mode > 1) {
    throw ArgumentError("serialize: mode must be 0 or 1");
  }
  if (h.codebook_size < 1 || h.num_stages < 1) {
    throw ArgumentError("serialize: empty codebook or zero stages");
  }
  if (h.gain_bits > 16 || (h.mode == 1 && h.gain_bits < 1)) {
    throw ArgumentError("serialize: gain_bits out of range");
  }
  if (stream.tokens.size() != h.num_frames) {
    throw ArgumentError("serialize: token count does not match num_frames");
  }
  const std::size_t expect_gains = (h.mode == 1) ? h.num_frames : 0;
  if (stream.gain_codes.size() != expect_gains) {
    throw ArgumentError("serialize: gain code count does not match mode");
  }
  for (const TokenFrame& frame : stream.tokens) {
    if (frame.indices.size() != h.num_stages) {
      throw ArgumentError("serialize: frame with wrong stage count");
    }
    for (std::uint32_t index : frame.indices) {
      if (index >= h.codebook_size) {
        throw ArgumentError("serialize: token index out of range");
      }
    }
  }
  for (std::uint32_t code : stream.gain_codes) {
    if (h.gain_bits < 32 && code >= (1u << h.gain_bits)) {
      throw ArgumentError("serialize: gain code out of range");
    }
  }
}

}  // namespace

int token_bits(int codebook_size) {
  if (codebook_size <= 1) return 0;
  return std::bit_width(static_cast<unsigned>(codebook_size - 1));
}

std::uint64_t payload_bits(const StreamHeader& header) {
  const std::uint64_t per_frame =
      (header.mode == 1 ? header.gain_bits : 0) +
      static_cast<std::uint64_t>(header.num_stages) *
          static_cast<std::uint64_t>(token_bits(header.codebook_size));
  return per_frame * header.num_frames;
}

std::uint64_t payload_bytes(const StreamHeader& header) {
  return (payload_bits(header) + 7) / 8;
}

std::vector<std::uint8_t> serialize(const EncodedStream& stream) {
  check_stream(stream);
  const StreamHeader& h = stream.header;

  std::vector<std::uint8_t> out;
  out.reserve(kStreamHeaderBytes + payload_bytes(h));
  out.insert(out.end(), kStreamMagic, kStreamMagic + 4);
  out.push_back(h.version);
  out.push_back(h.mode);
  put_u32(out, h.sample_rate);
  put_u16(out, h.frame_length);
  put_u16(out, h.hop);
  put_u16(out, h.codebook_size);
  out.push_back(h.num_stages);
  out.push_back(h.gain_bits);
  put_u16(out, h.mu);
  put_u32(out, h.num_frames);
  put_u32(out, h.original_length);

  BitWriter writer(out);
  const int bits = token_bits(h.codebook_size);
  for (std::uint32_t m = 0; m < h.num_frames; ++m) {
    if (h.mode == 1) {
      writer.put(stream.gain_codes[m], h.gain_bits);
    }
    for (std::uint32_t index : stream.tokens[m].indices) {
      writer.put(index, bits);
    }
  }
  return out;
}

EncodedStream deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kStreamHeaderBytes) {
    throw CorruptStreamError("stream shorter than the 28-byte header");
  }
  if (!std::equal(bytes.begin(), bytes.begin() + 4, kStreamMagic)) {
    throw CorruptStreamError("bad magic");
  }
  EncodedStream stream;
  StreamHeader& h = stream.header;
  h.version = bytes[4];
  if (h.version != kStreamVersion) {
    throw CorruptStreamError("unsupported version " +
                             std::to_string(h.version));
  }
  h.mode = bytes[5];
  if (h.mode > 1) {
    throw CorruptStreamError("bad mode byte " + std::to_string(h.mode));
  }
  h.sample_rate = get_u32(bytes.data() + 6);
  h.frame_length = get_u16(bytes.data() + 10);
  h.hop = get_u16(bytes.data() + 12);
  h.codebook_size = get_u16(bytes.data() + 14);
  h.num_stages = bytes[16];
  h.gain_bits = bytes[17];
  h.mu = get_u16(bytes.data() + 18);
  h.num_frames = get_u32(bytes.data() + 20);
  h.original_length = get_u32(bytes.data() + 24);

  if (h.codebook_size < 1) {
    throw CorruptStreamError("zero codebook_size");
  }
  if (h.num_stages < 1) {
    throw CorruptStreamError("zero num_stages");
  }
  if (h.gain_bits > 16 || (h.mode == 1 && h.gain_bits < 1)) {
    throw CorruptStreamError("gain_bits out of range");
  }

  const std::uint64_t expect =
      kStreamHeaderBytes + payload_bytes(h);
  if (bytes.size() < expect) {
    throw CorruptStreamError("truncated payload: have " +
                             std::to_string(bytes.size()) + " bytes, need " +
                             std::to_string(expect));
  }
  if (bytes.size() > expect) {
    throw CorruptStreamError("trailing bytes after payload");
  }

  BitReader reader(bytes.data() + kStreamHeaderBytes,
                   bytes.size() - kStreamHeaderBytes);
  const int bits = token_bits(h.codebook_size);
  stream.tokens.resize(h.num_frames);
  if (h.mode == 1) stream.gain_codes.reserve(h.num_frames);
  for (std::uint32_t m = 0; m < h.num_frames; ++m) {
    if (h.mode == 1) {
      stream.gain_codes.push_back(reader.get(h.gain_bits));
    }
    TokenFrame& frame = stream.tokens[m];
    frame.indices.resize(h.num_stages);
    for (int q = 0; q < h.num_stages; ++q) {
      const std::uint32_t index = reader.get(bits);
      if (index >= h.codebook_size) {
        throw CorruptStreamError(
            "token index " + std::to_string(index) + " out of range in frame " +
            std::to_string(m) + " stage " + std::to_string(q));
      }
      frame.indices[q] = index;
    }
  }
  if (!reader.padding_clear()) {
    throw CorruptStreamError("nonzero padding bits at end of stream");
  }
  return stream;
}

}  // namespace sgeq
