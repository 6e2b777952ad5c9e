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

#include "trustgate/pta/messages.hpp"

#include <string>

#include "trustgate/bytes.hpp"
#include "trustgate/error.hpp"

namespace trustgate::pta {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOk: return "OK";
    case Status::kAccessDenied: return "AccessDenied";
    case Status::kBadParameters: return "BadParameters";
    case Status::kBadSession: return "BadSession";
    case Status::kUnknownCommand: return "UnknownCommand";
    case Status::kNoData: return "NoData";
    case Status::kShortBuffer: return "ShortBuffer";
  }
  return "Unknown";
}

namespace {

void put_param(bytes::Buffer& out, const Param& p) {
  if (std::holds_alternative<NoneParam>(p)) {
    bytes::put_u32(out, 0);
    bytes::put_u64(out, 0);
  } else if (const auto* v = std::get_if<ValueParam>(&p)) {
    bytes::put_u32(out, 1);
    bytes::put_u32(out, v->a);
    bytes::put_u32(out, v->b);
  } else {
    const auto& m = std::get<MemRefParam>(p);
    if (m.region > kMaxWireRegion || m.offset > kMaxWireOffset) {
      throw Error(ErrorCode::kMalformedMessage, "memref region/offset exceeds wire width");
    }
    bytes::put_u32(out, 2);
    bytes::put_u32(out, m.region | (m.offset << 8));
    bytes::put_u32(out, m.length);
  }
}

Param get_param(bytes::Reader& in) {
  const auto tag = in.u32();
  const auto lo = in.u32();
  const auto hi = in.u32();
  switch (tag) {
    case 0:
      if (lo != 0 || hi != 0) throw Error(ErrorCode::kMalformedMessage, "none param with data");
      return NoneParam{};
    case 1:
      return ValueParam{lo, hi};
    case 2:
      return MemRefParam{lo & 0xFF, lo >> 8, hi};
    default:
      throw Error(ErrorCode::kMalformedMessage, "unknown param tag " + std::to_string(tag));
  }
}

void expect_size(std::span<const std::uint8_t> image, std::size_t size) {
  if (image.size() != size) {
    throw Error(ErrorCode::kMalformedMessage, "image is " + std::to_string(image.size()) +
                                                  " bytes, expected " + std::to_string(size));
  }
}

}  // namespace

std::vector<std::uint8_t> encode_command(const Command& cmd) {
  bytes::Buffer out;
  out.reserve(kCommandWireSize);
  bytes::put_u32(out, cmd.session);
  bytes::put_u32(out, cmd.cmd_id);
  for (const auto& p : cmd.params) put_param(out, p);
  return out;
}

Command decode_command(std::span<const std::uint8_t> image) {
  expect_size(image, kCommandWireSize);
  bytes::Reader in(image, ErrorCode::kMalformedMessage);
  Command cmd;
  cmd.session = in.u32();
  cmd.cmd_id = in.u32();
  for (auto& p : cmd.params) p = get_param(in);
  return cmd;
}

std::vector<std::uint8_t> encode_response(const Response& resp) {
  bytes::Buffer out;
  out.reserve(kResponseWireSize);
  bytes::put_u32(out, static_cast<std::uint32_t>(resp.status));
  for (const auto& p : resp.params) put_param(out, p);
  return out;
}

Response decode_response(std::span<const std::uint8_t> image) {
  expect_size(image, kResponseWireSize);
  bytes::Reader in(image, ErrorCode::kMalformedMessage);
  Response resp;
  resp.status = static_cast<Status>(in.u32());
  for (auto& p : resp.params) p = get_param(in);
  if (resp.status != Status::kOk) {
    for (const auto& p : resp.params) {
      if (!std::holds_alternative<NoneParam>(p)) {
        throw Error(ErrorCode::kMalformedMessage, "failed response carries out-params");
      }
    }
  }
  return resp;
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kMalformedMessage, "odd-length hex string");
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kMalformedMessage, "invalid hex digit");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::string format_replay_line(const Command& cmd, const Response& resp) {
  return to_hex(encode_command(cmd)) + ' ' + to_hex(encode_response(resp));
}

ReplayEntry parse_replay_line(std::string_view line) {
  auto space = line.find(' ');
  if (space == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedMessage, "replay line lacks a separator");
  }
  return {decode_command(from_hex(line.substr(0, space))),
          decode_response(from_hex(line.substr(space + 1)))};
}

}  // namespace trustgate::pta
