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
#include <string_view>
#include <variant>
#include <vector>

namespace trustgate::pta {

inline constexpr std::uint32_t kCmdReadAudio = 0x01;
inline constexpr std::uint32_t kCmdGetStatus = 0x02;

/// Status codes follow the GlobalPlatform TEE numbering.
enum class Status : std::uint32_t {
  kOk = 0x00000000,
  kAccessDenied = 0xFFFF0001,
  kBadParameters = 0xFFFF0006,
  kBadSession = 0xFFFF0008,  // TEE_ERROR_ITEM_NOT_FOUND
  kUnknownCommand = 0xFFFF000A,  // TEE_ERROR_NOT_SUPPORTED
  kNoData = 0xFFFF000B,
  kShortBuffer = 0xFFFF0010,
};

std::string_view to_string(Status status);

struct NoneParam {
  friend bool operator==(NoneParam, NoneParam) = default;
};

struct ValueParam {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  friend bool operator==(ValueParam, ValueParam) = default;
};

/// Window into a registered memory region. On the wire the region id takes
/// 8 bits and the offset 24 bits.
struct MemRefParam {
  std::uint32_t region = 0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
  friend bool operator==(MemRefParam, MemRefParam) = default;
};

inline constexpr std::uint32_t kMaxWireRegion = 0xFF;
inline constexpr std::uint32_t kMaxWireOffset = 0xFFFFFF;

using Param = std::variant<NoneParam, ValueParam, MemRefParam>;
using Params = std::array<Param, 4>;

struct Command {
  std::uint32_t session = 0;
  std::uint32_t cmd_id = 0;
  Params params{};
  friend bool operator==(const Command&, const Command&) = default;
};

struct Response {
  Status status = Status::kOk;
  Params params{};
  friend bool operator==(const Response&, const Response&) = default;

  static Response failure(Status s) { return Response{s, {}}; }
};

inline constexpr std::size_t kParamWireSize = 12;
inline constexpr std::size_t kCommandWireSize = 8 + 4 * kParamWireSize;
inline constexpr std::size_t kResponseWireSize = 4 + 4 * kParamWireSize;

// Little-endian images:
//   command  = session u32 | cmd_id u32 | 4 x param
//   response = status u32 | 4 x param
//   param    = tag u32 (0 none, 1 value, 2 memref) | 8 bytes
//     none   = 8 zero bytes
//     value  = a u32 | b u32
//     memref = region u8 | offset u24 | length u32
// Encoders throw kMalformedMessage on a memref that does not fit; decoders
// throw it on anything that is not the canonical image of a message,
// including a failed response that carries out-params.
std::vector<std::uint8_t> encode_command(const Command& cmd);
Command decode_command(std::span<const std::uint8_t> image);
std::vector<std::uint8_t> encode_response(const Response& resp);
Response decode_response(std::span<const std::uint8_t> image);

std::string to_hex(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> from_hex(std::string_view hex);

/// One replay-log line: "<command hex> <response hex>".
std::string format_replay_line(const Command& cmd, const Response& resp);

struct ReplayEntry {
  Command command;
  Response response;
};

ReplayEntry parse_replay_line(std::string_view line);

}  // namespace trustgate::pta
