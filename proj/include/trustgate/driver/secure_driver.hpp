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
#include <deque>
#include <mutex>
#include <span>
#include <string>
#include <string_view>

#include "trustgate/audio/i2s.hpp"
#include "trustgate/driver/encoded_block.hpp"
#include "trustgate/tee/memory.hpp"
#include "trustgate/tee/world.hpp"

namespace trustgate::driver {

struct DriverStatus {
  std::uint64_t occupancy = 0;
  std::uint64_t overrun_count = 0;
};

/// Secure-world I2S driver. Frames live in a ring buffer allocated from a
/// secure-only carve-out; every access goes through PhysicalMemory as the
/// secure world.
///
/// One thread may ingest while another reads blocks. Anything else must be
/// externally serialized.
class SecureDriver {
 public:
  /// Allocates capacity * 4 bytes from `allocator`. Throws kAllocation when
  /// the region is not secure-only or too small.
  SecureDriver(tee::PhysicalMemory& memory, tee::RegionAllocator& allocator,
               std::size_t capacity);

  SecureDriver(const SecureDriver&) = delete;
  SecureDriver& operator=(const SecureDriver&) = delete;

  /// Decodes `stream` and appends frames until the ring is full; the rest
  /// are rejected and counted as overruns. `speech` is the side-channel text
  /// for these frames, attached to whichever block later carries the first
  /// accepted frame. Returns the number of frames accepted.
  std::size_t ingest(std::span<const audio::I2sClock> stream, std::string_view speech = {});

  /// Dequeues n frames as the next block. Throws kAccessDenied unless the
  /// context is executing in the secure world, kUnderflow when fewer than n
  /// frames are buffered.
  EncodedBlock read_block(std::size_t n, const tee::WorldContext& ctx);

  /// Wire size read_block(n) would produce right now, without dequeuing.
  std::size_t peek_encoded_size(std::size_t n) const;

  std::size_t capacity() const { return capacity_; }
  std::uint64_t occupancy() const;
  std::uint64_t overrun_count() const { return overruns_.load(std::memory_order_relaxed); }
  DriverStatus status() const { return {occupancy(), overrun_count()}; }
  std::uint32_t next_sequence() const { return sequence_; }

  tee::Address buffer_base() const { return base_; }
  std::uint64_t buffer_bytes() const { return capacity_ * kBytesPerFrame; }

 private:
  struct Speech {
    std::uint64_t first_frame;
    std::string text;
  };

  std::string take_speech(std::uint64_t begin, std::uint64_t end);
  tee::Address slot_address(std::uint64_t index) const;

  tee::PhysicalMemory& memory_;
  std::size_t capacity_;
  tee::Address base_;

  std::atomic<std::uint64_t> head_{0};  // frames dequeued, consumer-owned
  std::atomic<std::uint64_t> tail_{0};  // frames accepted, producer-owned
  std::atomic<std::uint64_t> overruns_{0};
  std::uint32_t sequence_ = 0;

  mutable std::mutex speech_mu_;
  std::deque<Speech> speech_;
};

}  // namespace trustgate::driver
