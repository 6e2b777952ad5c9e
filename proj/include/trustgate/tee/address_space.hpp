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
#include <optional>
#include <vector>

#include "trustgate/tee/world.hpp"

namespace trustgate::tee {

using Address = std::uint64_t;

enum class RegionOwner : std::uint8_t { kSecureOnly, kNormalOnly, kShared };
enum class AccessMode : std::uint8_t { kRead, kWrite };
enum class AccessDecision : std::uint8_t { kAllow, kDeny };

struct RegionId {
  std::uint32_t value = 0;
  friend bool operator==(RegionId, RegionId) = default;
  friend auto operator<=>(RegionId, RegionId) = default;
};

struct MemoryRegion {
  RegionId id;
  Address base = 0;
  std::uint64_t length = 0;
  RegionOwner owner = RegionOwner::kNormalOnly;

  Address end() const { return base + length; }
  bool contains(Address base_in, std::uint64_t len) const {
    return base_in >= base && len <= length && base_in - base <= length - len;
  }
};

/// Flat, byte-granular model of the TrustZone address-space controller.
/// Addresses not covered by any registered region belong to the normal world.
/// Registered regions never overlap, so every byte has exactly one owner.
class AddressSpaceController {
 public:
  /// Registers [base, base + length) as secure-only RAM.
  /// Throws kRange on zero length or overflow, kOverlap if the range
  /// intersects an existing region.
  RegionId carve_secure_region(Address base, std::uint64_t length);

  /// Registers [base, base + length) as memory visible to both worlds.
  RegionId map_shared_region(Address base, std::uint64_t length);

  AccessDecision check_access(WorldId world, Address base, std::uint64_t length,
                              AccessMode mode) const;

  RegionOwner owner_of(Address addr) const;
  const MemoryRegion& region(RegionId id) const;
  const std::vector<MemoryRegion>& regions() const { return regions_; }

 private:
  RegionId add(Address base, std::uint64_t length, RegionOwner owner);

  std::vector<MemoryRegion> regions_;  // sorted by base
  std::uint32_t next_id_ = 0;
};

}  // namespace trustgate::tee
