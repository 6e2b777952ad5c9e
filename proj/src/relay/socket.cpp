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

#include "trustgate/relay/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>

#include "trustgate/error.hpp"

namespace trustgate::relay {

namespace {

struct AddrInfoDeleter {
  void operator()(addrinfo* ai) const { freeaddrinfo(ai); }
};
using AddrInfoPtr = std::unique_ptr<addrinfo, AddrInfoDeleter>;

AddrInfoPtr resolve(const Endpoint& ep, bool passive, ErrorCode code) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = passive ? AI_PASSIVE : 0;
  addrinfo* out = nullptr;
  const auto port = std::to_string(ep.port);
  if (int rc = getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &out); rc != 0) {
    throw Error(code, "cannot resolve " + ep.to_string() + ": " + gai_strerror(rc));
  }
  return AddrInfoPtr(out);
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

Endpoint parse_endpoint(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(ErrorCode::kConfig, "endpoint '" + text + "' is not host:port");
  }
  Endpoint ep;
  ep.host = text.substr(0, colon);
  try {
    std::size_t used = 0;
    const int port = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1 || port < 0 || port > 65535) throw std::out_of_range("");
    ep.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfig, "endpoint '" + text + "' has an invalid port");
  }
  return ep;
}

void Socket::reset() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

Socket Socket::connect_to(const Endpoint& endpoint) {
  auto ai = resolve(endpoint, false, ErrorCode::kConnect);
  Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
  if (!s.valid()) throw Error(ErrorCode::kConnect, "socket: " + errno_text());
  if (::connect(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0) {
    throw Error(ErrorCode::kConnect, endpoint.to_string() + ": " + errno_text());
  }
  int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

Socket Socket::listen_on(const Endpoint& endpoint) {
  auto ai = resolve(endpoint, true, ErrorCode::kBind);
  Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
  if (!s.valid()) throw Error(ErrorCode::kBind, "socket: " + errno_text());
  int one = 1;
  ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0 || ::listen(s.fd(), 16) != 0) {
    throw Error(ErrorCode::kBind, endpoint.to_string() + ": " + errno_text());
  }
  return s;
}

Socket Socket::accept() const {
  int fd;
  do {
    fd = ::accept(fd_, nullptr, nullptr);
  } while (fd < 0 && errno == EINTR);
  if (fd >= 0) {
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  return Socket(fd);
}

std::uint16_t Socket::local_port() const {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) return 0;
  return ntohs(addr.sin_port);
}

void Socket::write_all(std::span<const std::uint8_t> data) const {
  std::size_t done = 0;
  while (done < data.size()) {
    auto n = ::send(fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error(ErrorCode::kTransport, "send: " + errno_text());
    done += static_cast<std::size_t>(n);
  }
}

bool Socket::read_exact_or_eof(std::span<std::uint8_t> out) const {
  std::size_t done = 0;
  while (done < out.size()) {
    auto n = ::recv(fd_, out.data() + done, out.size() - done, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n == 0 && done == 0) return false;
    if (n <= 0) throw Error(ErrorCode::kTransport, "connection closed mid-message");
    done += static_cast<std::size_t>(n);
  }
  return true;
}

void Socket::read_exact(std::span<std::uint8_t> out) const {
  if (!read_exact_or_eof(out)) throw Error(ErrorCode::kTransport, "connection closed");
}

void Socket::shutdown() const {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

}  // namespace trustgate::relay
