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
#include <span>
#include <string>

namespace trustgate::relay {

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  std::string to_string() const { return host + ":" + std::to_string(port); }
};

/// Parses "host:port". Throws kConfig on anything else.
Endpoint parse_endpoint(const std::string& text);

/// Owning POSIX stream-socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() { reset(); }

  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept {
    if (this != &other) {
      reset();
      fd_ = other.release();
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  /// Throws kConnect when nothing accepts at `endpoint`.
  static Socket connect_to(const Endpoint& endpoint);
  /// Listening socket; port 0 picks an ephemeral port. Throws kBind.
  static Socket listen_on(const Endpoint& endpoint);

  Socket accept() const;
  std::uint16_t local_port() const;

  /// Throws kTransport on error or premature end of stream.
  void write_all(std::span<const std::uint8_t> data) const;
  void read_exact(std::span<std::uint8_t> out) const;
  /// Like read_exact but returns false on a clean end of stream before the
  /// first byte.
  bool read_exact_or_eof(std::span<std::uint8_t> out) const;

  /// Wakes any thread blocked on this socket.
  void shutdown() const;

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }
  int release() {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset();

 private:
  int fd_ = -1;
};

}  // namespace trustgate::relay
