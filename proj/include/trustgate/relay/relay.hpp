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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "trustgate/relay/channel.hpp"
#include "trustgate/relay/wire.hpp"
#include "trustgate/tee/world.hpp"

namespace trustgate::relay {

enum class SupplicantOp : std::uint8_t { kConnect, kSend, kClose };

struct SupplicantRequest {
  SupplicantOp op = SupplicantOp::kSend;
  std::uint32_t connection = 0;
  std::vector<std::uint8_t> payload;
};

struct SupplicantReply {
  std::uint32_t connection = 0;
  Ack ack;
};

using ChannelFactory = std::function<std::shared_ptr<Channel>()>;

/// Normal-world daemon that performs network I/O on behalf of the secure
/// world. Requests are only honoured while the caller's context is in the
/// normal world, i.e. after an RPC has crossed over.
class Supplicant {
 public:
  explicit Supplicant(ChannelFactory factory) : factory_(std::move(factory)) {}

  /// Throws kAccessDenied from the secure world, kConnect, kNotConnected
  /// (Send/Close on an unknown id) and kTransport.
  SupplicantReply handle(const SupplicantRequest& request, const tee::WorldContext& ctx);

  std::size_t open_connections() const { return channels_.size(); }

 private:
  ChannelFactory factory_;
  std::map<std::uint32_t, std::shared_ptr<Channel>> channels_;
  std::uint32_t next_id_ = 1;
};

/// Relay module of the trusted application. Every call into the supplicant
/// crosses to the normal world and back: two world switches.
class Relay {
 public:
  explicit Relay(Supplicant& supplicant) : supplicant_(supplicant) {}

  /// Opens the cloud connection through the supplicant. Throws kConnect.
  void handshake(tee::WorldContext& ctx);

  /// Frames `payload` under the next sequence number and ships it. Throws
  /// kNotConnected before crossing worlds; kTransport after the round trip
  /// (the sequence number is consumed either way).
  Ack relay_send(std::string payload, std::uint32_t flags, tee::WorldContext& ctx);

  void close(tee::WorldContext& ctx);

  bool connected() const { return connection_ != 0; }
  std::uint32_t next_sequence() const { return sequence_; }
  /// Sends that reached the supplicant, successful or not.
  std::uint64_t sends_attempted() const { return attempted_; }
  std::uint64_t bytes_sent() const { return bytes_sent_; }

 private:
  SupplicantReply rpc(const SupplicantRequest& request, tee::WorldContext& ctx);

  Supplicant& supplicant_;
  std::uint32_t connection_ = 0;
  std::uint32_t sequence_ = 0;
  std::uint64_t attempted_ = 0;
  std::uint64_t bytes_sent_ = 0;
};

}  // namespace trustgate::relay
