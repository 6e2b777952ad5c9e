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

#include "trustgate/tee/address_space.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "trustgate/error.hpp"

namespace trustgate::tee {

std::string_view to_string(WorldId world) {
  return world == WorldId::kSecure ? "secure" : "normal";
}

namespace {

void check_range(Address base, std::uint64_t length) {
  if (length == 0) throw Error(ErrorCode::kRange, "zero-length range");
  if (base > std::numeric_limits<Address>::max() - length) {
    throw Error(ErrorCode::kRange, "range overflows the address space");
  }
}

bool intersects(Address a_base, std::uint64_t a_len, Address b_base, std::uint64_t b_len) {
  return a_base < b_base + b_len && b_base < a_base + a_len;
}

}  // namespace

RegionId AddressSpaceController::carve_secure_region(Address base, std::uint64_t length) {
  return add(base, length, RegionOwner::kSecureOnly);
}

RegionId AddressSpaceController::map_shared_region(Address base, std::uint64_t length) {
  return add(base, length, RegionOwner::kShared);
}

RegionId AddressSpaceController::add(Address base, std::uint64_t length, RegionOwner owner) {
  check_range(base, length);
  for (const auto& r : regions_) {
    if (intersects(base, length, r.base, r.length)) {
      throw Error(ErrorCode::kOverlap, "range intersects region " + std::to_string(r.id.value));
    }
  }
  MemoryRegion region{RegionId{next_id_++}, base, length, owner};
  auto pos = std::lower_bound(regions_.begin(), regions_.end(), base,
                              [](const MemoryRegion& r, Address b) { return r.base < b; });
  regions_.insert(pos, region);
  return region.id;
}

AccessDecision AddressSpaceController::check_access(WorldId world, Address base,
                                                     std::uint64_t length,
                                                     AccessMode /*mode*/) const {
  check_range(base, length);
  if (world == WorldId::kSecure) return AccessDecision::kAllow;
  // Straddling accesses are denied in full.
  for (const auto& r : regions_) {
    if (r.base >= base + length) break;
    if (r.owner == RegionOwner::kSecureOnly && intersects(base, length, r.base, r.length)) {
      return AccessDecision::kDeny;
    }
  }
  return AccessDecision::kAllow;
}

RegionOwner AddressSpaceController::owner_of(Address addr) const {
  auto it = std::upper_bound(regions_.begin(), regions_.end(), addr,
                             [](Address a, const MemoryRegion& r) { return a < r.base; });
  if (it == regions_.begin()) return RegionOwner::kNormalOnly;
  --it;
  return addr - it->base < it->length ? it->owner : RegionOwner::kNormalOnly;
}

const MemoryRegion& AddressSpaceController::region(RegionId id) const {
  for (const auto& r : regions_) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::kRange, "unknown region " + std::to_string(id.value));
}

}  // namespace trustgate::tee
