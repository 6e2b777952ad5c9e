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
#include <mutex>
#include <ostream>
#include <set>

#include "trustgate/driver/secure_driver.hpp"
#include "trustgate/pta/messages.hpp"
#include "trustgate/tee/memory.hpp"
#include "trustgate/tee/world.hpp"

namespace trustgate::pta {

/// Pseudo trusted application exposing the secure driver to trusted
/// applications. Invocations are serialized: one command runs at a time.
/// Calls from a TA stay inside the secure world and cost no world switch.
class Bridge {
 public:
  Bridge(driver::SecureDriver& driver, tee::PhysicalMemory& memory)
      : driver_(driver), memory_(memory) {}

  /// Never returns 0, which is reserved for "no session".
  std::uint32_t open_session();
  Status close_session(std::uint32_t session);
  Response invoke(const Command& cmd, const tee::WorldContext& ctx);

  std::size_t live_sessions() const;

  /// Every subsequent invoke appends one replay line to `sink`.
  void set_replay_sink(std::ostream* sink);

 private:
  Response dispatch(const Command& cmd, const tee::WorldContext& ctx);
  Response read_audio(const Command& cmd, const tee::WorldContext& ctx);
  Response get_status(const Command& cmd);

  driver::SecureDriver& driver_;
  tee::PhysicalMemory& memory_;
  mutable std::mutex mu_;
  std::set<std::uint32_t> sessions_;
  std::uint32_t next_session_ = 1;
  std::ostream* replay_ = nullptr;
};

}  // namespace trustgate::pta
