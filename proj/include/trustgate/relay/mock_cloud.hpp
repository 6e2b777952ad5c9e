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

#include <atomic>
#include <cstdint>
#include <list>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "trustgate/relay/socket.hpp"
#include "trustgate/relay/wire.hpp"

namespace trustgate::relay {

/// Test double for the cloud voice service. Accepts any number of
/// connections, handles each one serially on its own thread, acks every
/// frame with its sequence number and keeps the payloads for inspection.
///
/// A frame with a bad magic or a non-UTF-8 payload is NAKed and the
/// connection stays open; an oversized length cannot be resynchronized
/// and closes the connection after the NAK.
class MockCloud {
 public:
  /// Binds and starts serving. Throws kBind.
  explicit MockCloud(const Endpoint& bind);
  ~MockCloud();

  MockCloud(const MockCloud&) = delete;
  MockCloud& operator=(const MockCloud&) = delete;

  Endpoint endpoint() const { return endpoint_; }

  std::vector<RelayPacket> received() const;
  std::size_t received_count() const;
  std::size_t nak_count() const { return naks_.load(); }

  /// Stops accepting, disconnects every client and joins all threads.
  void stop();

 private:
  struct Connection {
    Socket socket;
    std::thread worker;
  };

  void accept_loop();
  void serve(const Socket& socket);

  Endpoint endpoint_;
  Socket listener_;
  std::thread acceptor_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::size_t> naks_{0};

  mutable std::mutex mu_;
  std::vector<RelayPacket> received_;
  std::list<Connection> connections_;
};

}  // namespace trustgate::relay
