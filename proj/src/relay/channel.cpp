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

#include "trustgate/relay/channel.hpp"

#include <array>

#include "trustgate/error.hpp"

namespace trustgate::relay {

void TcpChannel::connect() { socket_ = Socket::connect_to(endpoint_); }

Ack TcpChannel::exchange(std::span<const std::uint8_t> frame) {
  if (!socket_.valid()) throw Error(ErrorCode::kNotConnected, "channel is closed");
  try {
    socket_.write_all(frame);
    std::array<std::uint8_t, kAckSize> ack{};
    socket_.read_exact(ack);
    return decode_ack(ack);
  } catch (const Error& e) {
    socket_.reset();
    throw Error(ErrorCode::kTransport, e.what());
  }
}

Ack RecordingChannel::exchange(std::span<const std::uint8_t> frame) {
  if (!connected_) throw Error(ErrorCode::kNotConnected, "channel is closed");
  if (failures_ > 0) {
    --failures_;
    throw Error(ErrorCode::kTransport, "injected transport failure");
  }
  auto packet = decode_packet(frame);
  std::lock_guard lock(mu_);
  observed_.insert(observed_.end(), frame.begin(), frame.end());
  return {packet.sequence, AckStatus::kOk};
}

std::vector<std::uint8_t> RecordingChannel::observed() const {
  std::lock_guard lock(mu_);
  return observed_;
}

}  // namespace trustgate::relay
