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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trustgate/audio/i2s.hpp"

namespace trustgate::driver {

inline constexpr std::array<std::uint8_t, 4> kBlockMagic = {'T', 'G', 'B', '1'};
inline constexpr std::size_t kBlockHeaderSize = 16;
inline constexpr std::size_t kBytesPerFrame = 4;

/// Audio handed from the driver to the trusted application.
///
/// Wire image (little-endian):
///   "TGB1" | sequence u32 | frame_count u32 | payload_length u32
///   | payload (interleaved L/R int16) | text_length u32 | text
/// The text trailer carries what speech recognition would recover from the
/// PCM and never leaves secure memory.
struct EncodedBlock {
  std::uint32_t sequence = 0;
  std::uint32_t frame_count = 0;
  std::vector<std::uint8_t> payload;
  std::string attached_text;

  std::vector<audio::I2sFrame> frames() const;
  friend bool operator==(const EncodedBlock&, const EncodedBlock&) = default;
};

std::size_t encoded_size(std::size_t frame_count, std::size_t text_length);

std::vector<std::uint8_t> encode_block(const EncodedBlock& block);

/// Throws kMalformedBlock on a bad magic, inconsistent lengths or a
/// truncated image. Trailing bytes past the text are rejected.
EncodedBlock decode_block(std::span<const std::uint8_t> image);

void append_pcm(std::vector<std::uint8_t>& out, audio::I2sFrame frame);

}  // namespace trustgate::driver
