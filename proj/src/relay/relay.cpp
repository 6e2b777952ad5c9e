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

#include "trustgate/relay/relay.hpp"

#include "trustgate/error.hpp"

namespace trustgate::relay {

SupplicantReply Supplicant::handle(const SupplicantRequest& request,
                                   const tee::WorldContext& ctx) {
  if (ctx.current() != tee::WorldId::kNormal) {
    throw Error(ErrorCode::kAccessDenied, "supplicant invoked without a world switch");
  }
  switch (request.op) {
    case SupplicantOp::kConnect: {
      auto channel = factory_();
      channel->connect();
      const auto id = next_id_++;
      channels_.emplace(id, std::move(channel));
      return {id, {}};
    }
    case SupplicantOp::kSend: {
      auto it = channels_.find(request.connection);
      if (it == channels_.end() || !it->second->connected()) {
        throw Error(ErrorCode::kNotConnected, "no open connection " +
                                                  std::to_string(request.connection));
      }
      return {request.connection, it->second->exchange(request.payload)};
    }
    case SupplicantOp::kClose: {
      auto it = channels_.find(request.connection);
      if (it == channels_.end()) {
        throw Error(ErrorCode::kNotConnected, "no open connection " +
                                                  std::to_string(request.connection));
      }
      it->second->close();
      channels_.erase(it);
      return {request.connection, {}};
    }
  }
  throw Error(ErrorCode::kTransport, "unknown supplicant request");
}

SupplicantReply Relay::rpc(const SupplicantRequest& request, tee::WorldContext& ctx) {
  const auto origin = ctx.current();
  ctx.world_switch(tee::WorldId::kNormal);
  try {
    auto reply = supplicant_.handle(request, ctx);
    ctx.world_switch(origin);
    return reply;
  } catch (...) {
    ctx.world_switch(origin);
    throw;
  }
}

void Relay::handshake(tee::WorldContext& ctx) {
  if (connected()) return;
  connection_ = rpc({SupplicantOp::kConnect, 0, {}}, ctx).connection;
}

Ack Relay::relay_send(std::string payload, std::uint32_t flags, tee::WorldContext& ctx) {
  if (!connected()) throw Error(ErrorCode::kNotConnected, "relay has no open connection");
  RelayPacket packet{sequence_++, flags, std::move(payload)};
  SupplicantRequest request{SupplicantOp::kSend, connection_, encode_packet(packet)};
  ++attempted_;
  SupplicantReply reply;
  try {
    reply = rpc(request, ctx);
  } catch (const Error& e) {
    throw Error(ErrorCode::kTransport, e.what());
  }
  if (reply.ack.sequence != packet.sequence || reply.ack.status != AckStatus::kOk) {
    throw Error(ErrorCode::kTransport, "endpoint rejected packet " +
                                           std::to_string(packet.sequence));
  }
  bytes_sent_ += request.payload.size();
  return reply.ack;
}

void Relay::close(tee::WorldContext& ctx) {
  if (!connected()) return;
  const auto id = connection_;
  connection_ = 0;
  rpc({SupplicantOp::kClose, id, {}}, ctx);
}

}  // namespace trustgate::relay
