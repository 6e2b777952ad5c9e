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

#include "trustgate/relay/wire.hpp"

#include <algorithm>

#include "trustgate/bytes.hpp"
#include "trustgate/error.hpp"

namespace trustgate::relay {

std::vector<std::uint8_t> encode_packet(const RelayPacket& packet) {
  if (packet.payload.size() > kMaxPayload) {
    throw Error(ErrorCode::kMalformedMessage, "relay payload exceeds 1 MiB");
  }
  bytes::Buffer out;
  out.reserve(kFrameHeaderSize + packet.payload.size());
  bytes::put_bytes(out, kFrameMagic);
  bytes::put_u32(out, packet.sequence);
  bytes::put_u32(out, packet.flags);
  bytes::put_u32(out, static_cast<std::uint32_t>(packet.payload.size()));
  bytes::put_str(out, packet.payload);
  return out;
}

FrameHeader parse_frame_header(std::span<const std::uint8_t, kFrameHeaderSize> header) {
  FrameHeader h;
  h.magic_ok = std::equal(kFrameMagic.begin(), kFrameMagic.end(), header.begin());
  h.sequence = bytes::get_u32(header, 4);
  h.flags = bytes::get_u32(header, 8);
  h.length = bytes::get_u32(header, 12);
  return h;
}

RelayPacket decode_packet(std::span<const std::uint8_t> image) {
  if (image.size() < kFrameHeaderSize) {
    throw Error(ErrorCode::kMalformedMessage, "relay frame truncated");
  }
  auto h = parse_frame_header(image.first<kFrameHeaderSize>());
  if (!h.magic_ok) throw Error(ErrorCode::kMalformedMessage, "bad relay frame magic");
  if (h.length > kMaxPayload || image.size() - kFrameHeaderSize != h.length) {
    throw Error(ErrorCode::kMalformedMessage, "relay frame length mismatch");
  }
  auto payload = image.subspan(kFrameHeaderSize);
  if (!is_valid_utf8(payload)) throw Error(ErrorCode::kMalformedMessage, "payload is not UTF-8");
  return {h.sequence, h.flags, std::string(payload.begin(), payload.end())};
}

std::vector<std::uint8_t> encode_ack(const Ack& ack) {
  bytes::Buffer out;
  out.reserve(kAckSize);
  bytes::put_bytes(out, kAckMagic);
  bytes::put_u32(out, ack.sequence);
  bytes::put_u32(out, static_cast<std::uint32_t>(ack.status));
  return out;
}

Ack decode_ack(std::span<const std::uint8_t> image) {
  if (image.size() != kAckSize || !std::equal(kAckMagic.begin(), kAckMagic.end(), image.begin())) {
    throw Error(ErrorCode::kMalformedMessage, "malformed ack");
  }
  const auto status = bytes::get_u32(image, 8);
  if (status > static_cast<std::uint32_t>(AckStatus::kTooLarge)) {
    throw Error(ErrorCode::kMalformedMessage, "unknown ack status");
  }
  return {bytes::get_u32(image, 4), static_cast<AckStatus>(status)};
}

bool is_valid_utf8(std::span<const std::uint8_t> data) {
  std::size_t i = 0;
  while (i < data.size()) {
    const auto b = data[i];
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (b < 0x80) {
      ++i;
      continue;
    } else if ((b & 0xE0) == 0xC0) {
      extra = 1;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      extra = 2;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      extra = 3;
      cp = b & 0x07;
    } else {
      return false;
    }
    if (data.size() - i <= extra) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((data[i + k] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (data[i + k] & 0x3F);
    }
    // Reject overlong forms, surrogates and values past U+10FFFF.
    static constexpr std::uint32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace trustgate::relay
