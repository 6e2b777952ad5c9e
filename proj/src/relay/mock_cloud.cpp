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

#include "trustgate/relay/mock_cloud.hpp"

#include <array>

#include "trustgate/error.hpp"

namespace trustgate::relay {

MockCloud::MockCloud(const Endpoint& bind) : listener_(Socket::listen_on(bind)) {
  endpoint_ = bind;
  endpoint_.port = listener_.local_port();
  acceptor_ = std::thread([this] { accept_loop(); });
}

MockCloud::~MockCloud() { stop(); }

void MockCloud::stop() {
  if (stopping_.exchange(true)) return;
  listener_.shutdown();
  if (acceptor_.joinable()) acceptor_.join();
  std::list<Connection> connections;
  {
    std::lock_guard lock(mu_);
    connections.swap(connections_);
  }
  for (auto& c : connections) c.socket.shutdown();
  for (auto& c : connections) {
    if (c.worker.joinable()) c.worker.join();
  }
  listener_.reset();
}

void MockCloud::accept_loop() {
  while (!stopping_.load()) {
    Socket client = listener_.accept();
    if (!client.valid()) break;
    std::lock_guard lock(mu_);
    if (stopping_.load()) break;
    auto& conn = connections_.emplace_back();
    conn.socket = std::move(client);
    const Socket* socket = &conn.socket;
    conn.worker = std::thread([this, socket] { serve(*socket); });
  }
}

void MockCloud::serve(const Socket& socket) {
  auto reply = [&](std::uint32_t sequence, AckStatus status) {
    if (status != AckStatus::kOk) ++naks_;
    socket.write_all(encode_ack({sequence, status}));
  };
  try {
    std::array<std::uint8_t, kFrameHeaderSize> header{};
    std::vector<std::uint8_t> payload;
    while (socket.read_exact_or_eof(header)) {
      const auto h = parse_frame_header(header);
      if (!h.magic_ok) {
        reply(h.sequence, AckStatus::kBadMagic);
        continue;
      }
      if (h.length > kMaxPayload) {
        reply(h.sequence, AckStatus::kTooLarge);
        return;
      }
      payload.resize(h.length);
      socket.read_exact(payload);
      if (!is_valid_utf8(payload)) {
        reply(h.sequence, AckStatus::kBadPayload);
        continue;
      }
      {
        std::lock_guard lock(mu_);
        received_.push_back({h.sequence, h.flags, std::string(payload.begin(), payload.end())});
      }
      reply(h.sequence, AckStatus::kOk);
    }
  } catch (const Error&) {
    // Client went away mid-frame.
  }
}

std::vector<RelayPacket> MockCloud::received() const {
  std::lock_guard lock(mu_);
  return received_;
}

std::size_t MockCloud::received_count() const {
  std::lock_guard lock(mu_);
  return received_.size();
}

}  // namespace trustgate::relay
