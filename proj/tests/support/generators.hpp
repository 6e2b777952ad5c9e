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

// Random well-formed protocol messages for round-trip tests.
#pragma once

#include <random>
#include <string>

#include "trustgate/pta/messages.hpp"
#include "trustgate/relay/wire.hpp"

namespace gen {

inline trustgate::pta::Param random_param(std::mt19937_64& rng) {
  using namespace trustgate::pta;
  switch (rng() % 3) {
    case 0: return NoneParam{};
    case 1: return ValueParam{static_cast<std::uint32_t>(rng()), static_cast<std::uint32_t>(rng())};
    default:
      return MemRefParam{static_cast<std::uint32_t>(rng() % (kMaxWireRegion + 1)),
                         static_cast<std::uint32_t>(rng() % (kMaxWireOffset + 1)),
                         static_cast<std::uint32_t>(rng())};
  }
}

inline trustgate::pta::Command random_command(std::mt19937_64& rng) {
  trustgate::pta::Command cmd;
  cmd.session = static_cast<std::uint32_t>(rng());
  cmd.cmd_id = static_cast<std::uint32_t>(rng());
  for (auto& p : cmd.params) p = random_param(rng);
  return cmd;
}

inline trustgate::pta::Response random_response(std::mt19937_64& rng) {
  using namespace trustgate::pta;
  static constexpr Status kFailures[] = {Status::kAccessDenied, Status::kBadParameters,
                                         Status::kBadSession, Status::kUnknownCommand,
                                         Status::kNoData, Status::kShortBuffer};
  if (rng() % 4 == 0) return Response::failure(kFailures[rng() % 6]);
  Response resp;
  for (auto& p : resp.params) p = random_param(rng);
  return resp;
}

// Random UTF-8 text mixing ASCII, 2-, 3- and 4-byte sequences.
inline std::string random_utf8(std::mt19937_64& rng, std::size_t max_chars) {
  std::string s;
  const std::size_t n = rng() % (max_chars + 1);
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng() % 4) {
      case 0: s += static_cast<char>(0x20 + rng() % 0x5F); break;
      case 1: {
        const std::uint32_t cp = 0x80 + rng() % (0x800 - 0x80);
        s += static_cast<char>(0xC0 | (cp >> 6));
        s += static_cast<char>(0x80 | (cp & 0x3F));
        break;
      }
      case 2: {
        std::uint32_t cp = 0x800 + rng() % (0x10000 - 0x800);
        if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0x2587;
        s += static_cast<char>(0xE0 | (cp >> 12));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
        break;
      }
      default: {
        const std::uint32_t cp = 0x10000 + rng() % (0x110000 - 0x10000);
        s += static_cast<char>(0xF0 | (cp >> 18));
        s += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        s += static_cast<char>(0x80 | (cp & 0x3F));
      }
    }
  }
  return s;
}

inline trustgate::relay::RelayPacket random_packet(std::mt19937_64& rng, std::size_t max_chars = 200) {
  return {static_cast<std::uint32_t>(rng()), static_cast<std::uint32_t>(rng()),
          random_utf8(rng, max_chars)};
}

}  // namespace gen
