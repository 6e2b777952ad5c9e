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

#include "trustgate/driver/encoded_block.hpp"

#include <algorithm>

#include "trustgate/bytes.hpp"
#include "trustgate/error.hpp"

namespace trustgate::driver {

void append_pcm(std::vector<std::uint8_t>& out, audio::I2sFrame frame) {
  auto l = static_cast<std::uint16_t>(frame.left);
  auto r = static_cast<std::uint16_t>(frame.right);
  out.push_back(static_cast<std::uint8_t>(l));
  out.push_back(static_cast<std::uint8_t>(l >> 8));
  out.push_back(static_cast<std::uint8_t>(r));
  out.push_back(static_cast<std::uint8_t>(r >> 8));
}

std::vector<audio::I2sFrame> EncodedBlock::frames() const {
  std::vector<audio::I2sFrame> out;
  out.reserve(payload.size() / kBytesPerFrame);
  for (std::size_t i = 0; i + kBytesPerFrame <= payload.size(); i += kBytesPerFrame) {
    auto l = static_cast<std::uint16_t>(payload[i] | (payload[i + 1] << 8));
    auto r = static_cast<std::uint16_t>(payload[i + 2] | (payload[i + 3] << 8));
    out.push_back({static_cast<std::int16_t>(l), static_cast<std::int16_t>(r)});
  }
  return out;
}

std::size_t encoded_size(std::size_t frame_count, std::size_t text_length) {
  return kBlockHeaderSize + frame_count * kBytesPerFrame + 4 + text_length;
}

std::vector<std::uint8_t> encode_block(const EncodedBlock& block) {
  if (block.payload.size() != std::size_t{block.frame_count} * kBytesPerFrame) {
    throw Error(ErrorCode::kMalformedBlock, "payload length does not match frame count");
  }
  bytes::Buffer out;
  out.reserve(encoded_size(block.frame_count, block.attached_text.size()));
  bytes::put_bytes(out, kBlockMagic);
  bytes::put_u32(out, block.sequence);
  bytes::put_u32(out, block.frame_count);
  bytes::put_u32(out, static_cast<std::uint32_t>(block.payload.size()));
  bytes::put_bytes(out, block.payload);
  bytes::put_u32(out, static_cast<std::uint32_t>(block.attached_text.size()));
  bytes::put_str(out, block.attached_text);
  return out;
}

EncodedBlock decode_block(std::span<const std::uint8_t> image) {
  bytes::Reader in(image, ErrorCode::kMalformedBlock);
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), kBlockMagic.begin())) {
    throw Error(ErrorCode::kMalformedBlock, "bad block magic");
  }
  EncodedBlock block;
  block.sequence = in.u32();
  block.frame_count = in.u32();
  auto payload_length = in.u32();
  if (payload_length != std::uint64_t{block.frame_count} * kBytesPerFrame) {
    throw Error(ErrorCode::kMalformedBlock, "payload length does not match frame count");
  }
  auto payload = in.take(payload_length);
  block.payload.assign(payload.begin(), payload.end());
  auto text = in.take(in.u32());
  block.attached_text.assign(text.begin(), text.end());
  if (in.remaining() != 0) throw Error(ErrorCode::kMalformedBlock, "trailing bytes after block");
  return block;
}

}  // namespace trustgate::driver
