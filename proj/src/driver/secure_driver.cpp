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

#include "trustgate/driver/secure_driver.hpp"

#include <algorithm>
#include <string>

#include "trustgate/error.hpp"

namespace trustgate::driver {

namespace {

tee::Address allocate_ring(tee::PhysicalMemory& memory, tee::RegionAllocator& allocator,
                           std::size_t capacity) {
  const auto& region = memory.controller().region(allocator.region());
  if (region.owner != tee::RegionOwner::kSecureOnly) {
    throw Error(ErrorCode::kAllocation, "driver buffers require a secure-only region");
  }
  if (capacity == 0) throw Error(ErrorCode::kAllocation, "zero-capacity ring");
  memory.back(region.id);
  return allocator.allocate(capacity * kBytesPerFrame, kBytesPerFrame);
}

}  // namespace

SecureDriver::SecureDriver(tee::PhysicalMemory& memory, tee::RegionAllocator& allocator,
                           std::size_t capacity)
    : memory_(memory), capacity_(capacity), base_(allocate_ring(memory, allocator, capacity)) {}

std::uint64_t SecureDriver::occupancy() const {
  return tail_.load(std::memory_order_acquire) - head_.load(std::memory_order_acquire);
}

tee::Address SecureDriver::slot_address(std::uint64_t index) const {
  return base_ + (index % capacity_) * kBytesPerFrame;
}

std::size_t SecureDriver::ingest(std::span<const audio::I2sClock> stream,
                                 std::string_view speech) {
  const auto frames = audio::decode_bitstream(stream);
  if (frames.empty()) return 0;

  const auto tail = tail_.load(std::memory_order_relaxed);
  const auto head = head_.load(std::memory_order_acquire);
  const auto free = capacity_ - (tail - head);
  const auto accepted = std::min<std::size_t>(frames.size(), free);

  std::vector<std::uint8_t> bytes;
  bytes.reserve(accepted * kBytesPerFrame);
  for (std::size_t i = 0; i < accepted; ++i) append_pcm(bytes, frames[i]);
  std::size_t done = 0;
  while (done < accepted) {
    const auto slot = (tail + done) % capacity_;
    const auto run = std::min<std::size_t>(accepted - done, capacity_ - slot);
    memory_.store(tee::WorldId::kSecure, slot_address(tail + done),
                  std::span(bytes).subspan(done * kBytesPerFrame, run * kBytesPerFrame));
    done += run;
  }
  if (accepted > 0 && !speech.empty()) {
    std::lock_guard lock(speech_mu_);
    speech_.push_back({tail, std::string(speech)});
  }
  overruns_.fetch_add(frames.size() - accepted, std::memory_order_relaxed);
  tail_.store(tail + accepted, std::memory_order_release);
  return accepted;
}

std::string SecureDriver::take_speech(std::uint64_t begin, std::uint64_t end) {
  std::lock_guard lock(speech_mu_);
  std::string text;
  while (!speech_.empty() && speech_.front().first_frame < end) {
    if (speech_.front().first_frame >= begin) {
      if (!text.empty()) text.push_back(' ');
      text += speech_.front().text;
    }
    speech_.pop_front();
  }
  return text;
}

std::size_t SecureDriver::peek_encoded_size(std::size_t n) const {
  const auto begin = head_.load(std::memory_order_relaxed);
  const auto end = begin + n;
  std::size_t text_length = 0;
  std::size_t pieces = 0;
  std::lock_guard lock(speech_mu_);
  for (const auto& s : speech_) {
    if (s.first_frame >= end) break;
    if (s.first_frame >= begin) {
      text_length += s.text.size();
      ++pieces;
    }
  }
  if (pieces > 1) text_length += pieces - 1;
  return encoded_size(n, text_length);
}

EncodedBlock SecureDriver::read_block(std::size_t n, const tee::WorldContext& ctx) {
  if (ctx.current() != tee::WorldId::kSecure) {
    throw Error(ErrorCode::kAccessDenied, "driver read from the normal world");
  }
  if (n == 0) throw Error(ErrorCode::kRange, "read of zero frames");
  const auto head = head_.load(std::memory_order_relaxed);
  const auto tail = tail_.load(std::memory_order_acquire);
  if (tail - head < n) {
    throw Error(ErrorCode::kUnderflow, std::to_string(n) + " frames requested, " +
                                           std::to_string(tail - head) + " buffered");
  }

  EncodedBlock block;
  block.sequence = sequence_++;
  block.frame_count = static_cast<std::uint32_t>(n);
  block.payload.resize(n * kBytesPerFrame);
  // Copy in at most two contiguous runs around the wrap point.
  std::size_t done = 0;
  while (done < n) {
    const auto slot = (head + done) % capacity_;
    const auto run = std::min<std::size_t>(n - done, capacity_ - slot);
    memory_.load(tee::WorldId::kSecure, slot_address(head + done),
                 std::span(block.payload).subspan(done * kBytesPerFrame, run * kBytesPerFrame));
    done += run;
  }
  block.attached_text = take_speech(head, head + n);
  head_.store(head + n, std::memory_order_release);
  return block;
}

}  // namespace trustgate::driver
