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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace trustgate::audio {

inline constexpr unsigned kWordLength = 16;
inline constexpr unsigned kSampleRateHz = 16000;  // nominal, metadata only

struct I2sFrame {
  std::int16_t left = 0;
  std::int16_t right = 0;
  friend bool operator==(const I2sFrame&, const I2sFrame&) = default;
};

/// One serial clock: word-select and serial-data line levels (0 or 1).
struct I2sClock {
  std::uint8_t ws = 0;
  std::uint8_t sd = 0;
  friend bool operator==(const I2sClock&, const I2sClock&) = default;
};

using I2sBitstream = std::vector<I2sClock>;

/// Emits 2 * word_length clocks for one frame: ws low for the left word,
/// high for the right word, data MSB first and delayed one clock behind ws.
/// The right word's LSB, which falls past the end of the frame, wraps into
/// the frame's first clock so every frame is self-contained.
/// Throws kUnsupportedWidth unless word_length == 16.
I2sBitstream encode_frame(I2sFrame frame, unsigned word_length = kWordLength);

/// Appends the encoding of `frames` to `out`.
void encode_frames(std::span<const I2sFrame> frames, I2sBitstream& out,
                   unsigned word_length = kWordLength);

I2sBitstream encode_frames(std::span<const I2sFrame> frames, unsigned word_length = kWordLength);

/// Inverse of encode_frame over a concatenation of frame segments.
/// Throws kMalformedStream on a length that is not a whole number of frames,
/// on a word-select pattern other than exact runs of word_length clocks, or
/// on line levels other than 0/1.
std::vector<I2sFrame> decode_bitstream(std::span<const I2sClock> bits,
                                       unsigned word_length = kWordLength);

}  // namespace trustgate::audio
