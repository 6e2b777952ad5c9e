// Copyright 2026 The TrustGate Authors
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

#include "trustgate/audio/i2s.hpp"

#include <string>

#include "trustgate/error.hpp"

namespace trustgate::audio {

namespace {

void require_width(unsigned word_length) {
  if (word_length != kWordLength) {
    throw Error(ErrorCode::kUnsupportedWidth,
                "word length " + std::to_string(word_length) + " (only 16 supported)");
  }
}

// Clock index (within a frame of 2 * wl clocks) carrying bit `bit` of a word
// whose window starts at `window`. MSB sits one clock after the ws edge.
constexpr unsigned clock_for_bit(unsigned window, unsigned bit, unsigned wl) {
  return (window + (wl - 1 - bit) + 1) % (2 * wl);
}

}  // namespace

void encode_frames(std::span<const I2sFrame> frames, I2sBitstream& out, unsigned word_length) {
  require_width(word_length);
  const unsigned wl = word_length;
  const unsigned span = 2 * wl;
  out.reserve(out.size() + frames.size() * span);
  for (const auto& frame : frames) {
    const auto base = out.size();
    out.resize(base + span);
    const auto left = static_cast<std::uint16_t>(frame.left);
    const auto right = static_cast<std::uint16_t>(frame.right);
    for (unsigned c = 0; c < span; ++c) out[base + c].ws = c < wl ? 0 : 1;
    for (unsigned bit = 0; bit < wl; ++bit) {
      out[base + clock_for_bit(0, bit, wl)].sd = (left >> bit) & 1u;
      out[base + clock_for_bit(wl, bit, wl)].sd = (right >> bit) & 1u;
    }
  }
}

I2sBitstream encode_frames(std::span<const I2sFrame> frames, unsigned word_length) {
  I2sBitstream out;
  encode_frames(frames, out, word_length);
  return out;
}

I2sBitstream encode_frame(I2sFrame frame, unsigned word_length) {
  return encode_frames(std::span<const I2sFrame>(&frame, 1), word_length);
}

std::vector<I2sFrame> decode_bitstream(std::span<const I2sClock> bits, unsigned word_length) {
  require_width(word_length);
  const unsigned wl = word_length;
  const unsigned span = 2 * wl;
  if (bits.size() % span != 0) {
    throw Error(ErrorCode::kMalformedStream, "length " + std::to_string(bits.size()) +
                                                 " is not a multiple of " + std::to_string(span));
  }
  std::vector<I2sFrame> frames;
  frames.reserve(bits.size() / span);
  for (std::size_t base = 0; base < bits.size(); base += span) {
    for (unsigned c = 0; c < span; ++c) {
      const auto& clk = bits[base + c];
      if (clk.ws > 1 || clk.sd > 1) {
        throw Error(ErrorCode::kMalformedStream,
                    "invalid line level at clock " + std::to_string(base + c));
      }
      if (clk.ws != (c < wl ? 0 : 1)) {
        throw Error(ErrorCode::kMalformedStream,
                    "word-select run broken at clock " + std::to_string(base + c));
      }
    }
    std::uint16_t left = 0;
    std::uint16_t right = 0;
    for (unsigned bit = 0; bit < wl; ++bit) {
      left |= static_cast<std::uint16_t>(bits[base + clock_for_bit(0, bit, wl)].sd << bit);
      right |= static_cast<std::uint16_t>(bits[base + clock_for_bit(wl, bit, wl)].sd << bit);
    }
    frames.push_back({static_cast<std::int16_t>(left), static_cast<std::int16_t>(right)});
  }
  return frames;
}

}  // namespace trustgate::audio
