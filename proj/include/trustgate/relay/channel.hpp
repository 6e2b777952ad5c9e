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
#include <span>
#include <vector>

#include "trustgate/relay/socket.hpp"
#include "trustgate/relay/wire.hpp"

namespace trustgate::relay {

/// Transport between the supplicant and the cloud endpoint. A production
/// deployment would plug an authenticated, encrypted stream in here; the
/// relay only depends on frame-in, ack-out.
class Channel {
 public:
  virtual ~Channel() = default;

  /// Throws kConnect.
  virtual void connect() = 0;
  /// Sends one encoded frame and waits for its ack. Throws kTransport.
  virtual Ack exchange(std::span<const std::uint8_t> frame) = 0;
  virtual void close() = 0;
  virtual bool connected() const = 0;
};

/// Plain TCP stream to a relay endpoint.
class TcpChannel final : public Channel {
 public:
  explicit TcpChannel(Endpoint endpoint) : endpoint_(std::move(endpoint)) {}

  void connect() override;
  Ack exchange(std::span<const std::uint8_t> frame) override;
  void close() override { socket_.reset(); }
  bool connected() const override { return socket_.valid(); }

 private:
  Endpoint endpoint_;
  Socket socket_;
};

/// In-memory transport that keeps exactly the bytes the cloud would see and
/// acknowledges every well-formed frame.
class RecordingChannel final : public Channel {
 public:
  void connect() override { connected_ = true; }
  Ack exchange(std::span<const std::uint8_t> frame) override;
  void close() override { connected_ = false; }
  bool connected() const override { return connected_; }

  std::vector<std::uint8_t> observed() const;

  /// The next `n` exchanges throw kTransport without recording anything.
  void fail_next(std::size_t n) { failures_ = n; }

 private:
  bool connected_ = false;
  std::size_t failures_ = 0;
  mutable std::mutex mu_;
  std::vector<std::uint8_t> observed_;
};

}  // namespace trustgate::relay
