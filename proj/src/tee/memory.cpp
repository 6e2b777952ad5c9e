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

#include "trustgate/tee/memory.hpp"

#include <algorithm>
#include <string>

#include "trustgate/error.hpp"

namespace trustgate::tee {

void PhysicalMemory::back(RegionId id) {
  const auto& r = asc_.region(id);
  backing_.try_emplace(id, r.length, std::uint8_t{0});
}

PhysicalMemory::Location PhysicalMemory::locate(Address addr, std::uint64_t len) const {
  for (const auto& r : asc_.regions()) {
    if (r.contains(addr, len) && backing_.contains(r.id)) return {r.id, addr - r.base};
  }
  throw Error(ErrorCode::kRange, "no backed region holds the range at " + std::to_string(addr));
}

void PhysicalMemory::load(WorldId world, Address addr, std::span<std::uint8_t> out) const {
  if (out.empty()) return;
  if (asc_.check_access(world, addr, out.size(), AccessMode::kRead) == AccessDecision::kDeny) {
    throw Error(ErrorCode::kAccessDenied, std::string(to_string(world)) +
                                              " world read of secure memory at " +
                                              std::to_string(addr));
  }
  auto loc = locate(addr, out.size());
  const auto& bytes = backing_.at(loc.id);
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(loc.offset), out.size(), out.begin());
}

void PhysicalMemory::store(WorldId world, Address addr, std::span<const std::uint8_t> data) {
  if (data.empty()) return;
  if (asc_.check_access(world, addr, data.size(), AccessMode::kWrite) == AccessDecision::kDeny) {
    throw Error(ErrorCode::kAccessDenied, std::string(to_string(world)) +
                                              " world write to secure memory at " +
                                              std::to_string(addr));
  }
  auto loc = locate(addr, data.size());
  auto& bytes = backing_.at(loc.id);
  std::copy(data.begin(), data.end(), bytes.begin() + static_cast<std::ptrdiff_t>(loc.offset));
}

RegionAllocator::RegionAllocator(const AddressSpaceController& asc, RegionId id) : id_(id) {
  const auto& r = asc.region(id);
  next_ = r.base;
  end_ = r.end();
}

Address RegionAllocator::allocate(std::uint64_t bytes, std::uint64_t align) {
  if (bytes == 0) throw Error(ErrorCode::kAllocation, "zero-byte allocation");
  Address aligned = (next_ + align - 1) / align * align;
  if (aligned < next_ || aligned > end_ || end_ - aligned < bytes) {
    throw Error(ErrorCode::kAllocation, "region " + std::to_string(id_.value) + " has " +
                                            std::to_string(remaining()) + " bytes left, " +
                                            std::to_string(bytes) + " requested");
  }
  next_ = aligned + bytes;
  return aligned;
}

}  // namespace trustgate::tee
