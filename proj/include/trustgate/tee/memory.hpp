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
#include <map>
#include <span>
#include <vector>

#include "trustgate/tee/address_space.hpp"

namespace trustgate::tee {

/// Backing storage for registered regions. Every load and store is mediated
/// by the address-space controller on behalf of the calling world, so a
/// normal-world access to secure RAM fails exactly as it would in hardware.
///
/// The controller must not gain regions after the first backing is attached.
class PhysicalMemory {
 public:
  explicit PhysicalMemory(const AddressSpaceController& asc) : asc_(asc) {}

  PhysicalMemory(const PhysicalMemory&) = delete;
  PhysicalMemory& operator=(const PhysicalMemory&) = delete;

  /// Allocates zeroed backing for `id`. Idempotent.
  void back(RegionId id);
  bool is_backed(RegionId id) const { return backing_.contains(id); }

  /// Throws kAccessDenied when the controller denies the access and kRange
  /// when the range is not inside a single backed region.
  void load(WorldId world, Address addr, std::span<std::uint8_t> out) const;
  void store(WorldId world, Address addr, std::span<const std::uint8_t> data);

  const AddressSpaceController& controller() const { return asc_; }

 private:
  struct Location {
    RegionId id;
    std::uint64_t offset;
  };
  Location locate(Address addr, std::uint64_t len) const;

  const AddressSpaceController& asc_;
  std::map<RegionId, std::vector<std::uint8_t>> backing_;
};

/// Bump allocator over a single region. Allocation is not thread-safe and
/// is expected during setup only.
class RegionAllocator {
 public:
  RegionAllocator(const AddressSpaceController& asc, RegionId id);

  /// Returns the base of a fresh [base, base + bytes) range inside the
  /// region, or throws kAllocation when the region is exhausted.
  Address allocate(std::uint64_t bytes, std::uint64_t align = 8);

  RegionId region() const { return id_; }
  std::uint64_t remaining() const { return end_ - next_; }

 private:
  RegionId id_;
  Address next_;
  Address end_;
};

}  // namespace trustgate::tee
