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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trustgate::relay {

inline constexpr std::array<std::uint8_t, 4> kFrameMagic = {'T', 'G', 'R', '1'};
inline constexpr std::array<std::uint8_t, 4> kAckMagic = {'T', 'G', 'A', '1'};
inline constexpr std::size_t kFrameHeaderSize = 16;
inline constexpr std::size_t kAckSize = 12;
inline constexpr std::uint32_t kMaxPayload = 1u << 20;

/// Frame = "TGR1" | sequence u32 | flags u32 | length u32 | payload
/// Ack   = "TGA1" | sequence u32 | status u32        (little-endian)
struct RelayPacket {
  std::uint32_t sequence = 0;
  std::uint32_t flags = 0;
  std::string payload;  // UTF-8
  friend bool operator==(const RelayPacket&, const RelayPacket&) = default;
};

enum class AckStatus : std::uint32_t {
  kOk = 0,
  kBadMagic = 1,
  kBadPayload = 2,  // payload is not valid UTF-8
  kTooLarge = 3,
};

struct Ack {
  std::uint32_t sequence = 0;
  AckStatus status = AckStatus::kOk;
  friend bool operator==(const Ack&, const Ack&) = default;
};

std::vector<std::uint8_t> encode_packet(const RelayPacket& packet);

/// Throws kMalformedMessage unless `image` is exactly one well-formed frame.
RelayPacket decode_packet(std::span<const std::uint8_t> image);

std::vector<std::uint8_t> encode_ack(const Ack& ack);
Ack decode_ack(std::span<const std::uint8_t> image);

struct FrameHeader {
  bool magic_ok = false;
  std::uint32_t sequence = 0;
  std::uint32_t flags = 0;
  std::uint32_t length = 0;
};

FrameHeader parse_frame_header(std::span<const std::uint8_t, kFrameHeaderSize> header);

bool is_valid_utf8(std::span<const std::uint8_t> data);

}  // namespace trustgate::relay
