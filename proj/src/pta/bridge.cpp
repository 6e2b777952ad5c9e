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

#include "trustgate/pta/bridge.hpp"

#include "trustgate/error.hpp"

namespace trustgate::pta {

namespace {

bool is_none(const Param& p) { return std::holds_alternative<NoneParam>(p); }

}  // namespace

std::uint32_t Bridge::open_session() {
  std::lock_guard lock(mu_);
  while (next_session_ == 0 || sessions_.contains(next_session_)) ++next_session_;
  auto id = next_session_++;
  sessions_.insert(id);
  return id;
}

Status Bridge::close_session(std::uint32_t session) {
  std::lock_guard lock(mu_);
  return sessions_.erase(session) == 1 ? Status::kOk : Status::kBadSession;
}

std::size_t Bridge::live_sessions() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void Bridge::set_replay_sink(std::ostream* sink) {
  std::lock_guard lock(mu_);
  replay_ = sink;
}

Response Bridge::invoke(const Command& cmd, const tee::WorldContext& ctx) {
  std::lock_guard lock(mu_);
  auto resp = dispatch(cmd, ctx);
  if (replay_ != nullptr) *replay_ << format_replay_line(cmd, resp) << '\n';
  return resp;
}

Response Bridge::dispatch(const Command& cmd, const tee::WorldContext& ctx) {
  if (ctx.current() != tee::WorldId::kSecure) return Response::failure(Status::kAccessDenied);
  if (cmd.session == 0 || !sessions_.contains(cmd.session)) {
    return Response::failure(Status::kBadSession);
  }
  switch (cmd.cmd_id) {
    case kCmdReadAudio: return read_audio(cmd, ctx);
    case kCmdGetStatus: return get_status(cmd);
    default: return Response::failure(Status::kUnknownCommand);
  }
}

// in:  [0] memref (output buffer)  [1] value a = frames requested
// out: [0] memref, length = bytes written  [1] value a = frames, b = sequence
Response Bridge::read_audio(const Command& cmd, const tee::WorldContext& ctx) {
  const auto* out = std::get_if<MemRefParam>(&cmd.params[0]);
  const auto* req = std::get_if<ValueParam>(&cmd.params[1]);
  if (out == nullptr || req == nullptr || !is_none(cmd.params[2]) || !is_none(cmd.params[3]) ||
      req->a == 0) {
    return Response::failure(Status::kBadParameters);
  }

  const tee::MemoryRegion* region = nullptr;
  for (const auto& r : memory_.controller().regions()) {
    if (r.id.value == out->region) region = &r;
  }
  if (region == nullptr || !memory_.is_backed(region->id) ||
      !region->contains(region->base + out->offset, out->length)) {
    return Response::failure(Status::kBadParameters);
  }

  if (driver_.occupancy() < req->a) return Response::failure(Status::kNoData);
  const auto needed = driver_.peek_encoded_size(req->a);
  if (out->length < needed) return Response::failure(Status::kShortBuffer);

  driver::EncodedBlock block;
  try {
    block = driver_.read_block(req->a, ctx);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnderflow) return Response::failure(Status::kNoData);
    if (e.code() == ErrorCode::kAccessDenied) return Response::failure(Status::kAccessDenied);
    throw;
  }
  const auto image = driver::encode_block(block);
  memory_.store(tee::WorldId::kSecure, region->base + out->offset, image);

  Response resp;
  resp.params[0] = MemRefParam{out->region, out->offset, static_cast<std::uint32_t>(image.size())};
  resp.params[1] = ValueParam{block.frame_count, block.sequence};
  return resp;
}

// out: [0] value a = occupancy  [1] value a = overrun count
Response Bridge::get_status(const Command& cmd) {
  for (const auto& p : cmd.params) {
    if (!is_none(p)) return Response::failure(Status::kBadParameters);
  }
  const auto st = driver_.status();
  Response resp;
  resp.params[0] = ValueParam{static_cast<std::uint32_t>(st.occupancy), 0};
  resp.params[1] = ValueParam{static_cast<std::uint32_t>(st.overrun_count), 0};
  return resp;
}

}  // namespace trustgate::pta
