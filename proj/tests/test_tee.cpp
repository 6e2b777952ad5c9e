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

#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "trustgate/error.hpp"
#include "trustgate/tee/address_space.hpp"
#include "trustgate/tee/memory.hpp"
#include "trustgate/tee/world.hpp"

using namespace trustgate;
using namespace trustgate::tee;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_SUITE("tee") {

TEST_CASE("carve examples") {
  AddressSpaceController asc;
  const auto r0 = asc.carve_secure_region(0x1000, 0x1000);
  CHECK(asc.region(r0).owner == RegionOwner::kSecureOnly);
  CHECK(asc.owner_of(0x1000) == RegionOwner::kSecureOnly);
  CHECK(asc.owner_of(0x1FFF) == RegionOwner::kSecureOnly);
  CHECK(asc.owner_of(0x2000) == RegionOwner::kNormalOnly);
  CHECK(code_of([&] { asc.carve_secure_region(0x1800, 0x100); }) == ErrorCode::kOverlap);

  // [0x0F00, 0x1100) vs [0x1000, 0x2000): byte oracle says they share 0x100 bytes.
  oracle::ByteMap bytes(0x3000);
  REQUIRE(bytes.add({0x1000, 0x1000, true}));
  CHECK_FALSE(bytes.add({0x0F00, 0x200, true}));
  CHECK(code_of([&] { asc.carve_secure_region(0x0F00, 0x200); }) == ErrorCode::kOverlap);

  // Adjacent ranges do not overlap.
  CHECK_NOTHROW(asc.carve_secure_region(0x0F00, 0x100));
  CHECK_NOTHROW(asc.carve_secure_region(0x2000, 0x10));
}

TEST_CASE("carve range errors") {
  AddressSpaceController asc;
  CHECK(code_of([&] { asc.carve_secure_region(0x10, 0); }) == ErrorCode::kRange);
  CHECK(code_of([&] { asc.carve_secure_region(~0ULL - 4, 16); }) == ErrorCode::kRange);
  CHECK(code_of([&] { asc.carve_secure_region(~0ULL - 15, 16); }) == ErrorCode::kRange);
  CHECK_NOTHROW(asc.carve_secure_region(~0ULL - 16, 16));
}

TEST_CASE("check_access examples") {
  AddressSpaceController asc;
  asc.carve_secure_region(0x1000, 0x1000);
  CHECK(asc.check_access(WorldId::kNormal, 0x1800, 8, AccessMode::kRead) == AccessDecision::kDeny);
  CHECK(asc.check_access(WorldId::kSecure, 0x1800, 8, AccessMode::kWrite) == AccessDecision::kAllow);
  oracle::ByteMap bytes(0x3000);
  bytes.add({0x1000, 0x1000, true});
  CHECK_FALSE(bytes.normal_may_access(0x0FF0, 0x20));
  CHECK(asc.check_access(WorldId::kNormal, 0x0FF0, 0x20, AccessMode::kRead) == AccessDecision::kDeny);
  CHECK(asc.check_access(WorldId::kNormal, 0x0FF0, 0x10, AccessMode::kRead) == AccessDecision::kAllow);
  CHECK(code_of([&] { (void)asc.check_access(WorldId::kNormal, 0, 0, AccessMode::kRead); }) ==
        ErrorCode::kRange);
  CHECK(code_of([&] {
          (void)asc.check_access(WorldId::kSecure, ~0ULL, 2, AccessMode::kRead);
        }) == ErrorCode::kRange);
}

TEST_CASE("shared regions are open to both worlds") {
  AddressSpaceController asc;
  const auto s = asc.map_shared_region(0x8000, 0x100);
  CHECK(asc.region(s).owner == RegionOwner::kShared);
  CHECK(asc.check_access(WorldId::kNormal, 0x8000, 0x100, AccessMode::kWrite) == AccessDecision::kAllow);
  CHECK(code_of([&] { asc.carve_secure_region(0x80F0, 0x20); }) == ErrorCode::kOverlap);
}

TEST_CASE("property: random layouts match the per-byte oracle") {
  std::mt19937_64 rng(11);
  constexpr std::uint64_t kSpace = 4096;
  for (int layout = 0; layout < 50; ++layout) {
    AddressSpaceController asc;
    oracle::ByteMap bytes(kSpace);
    for (int i = 0; i < 12; ++i) {
      const std::uint64_t base = rng() % kSpace;
      const std::uint64_t len = 1 + rng() % 300;
      if (base + len > kSpace) continue;
      const bool secure = rng() % 3 != 0;
      const bool ok = bytes.add({base, len, secure});
      try {
        secure ? asc.carve_secure_region(base, len) : asc.map_shared_region(base, len);
        CHECK(ok);
      } catch (const Error& e) {
        CHECK_FALSE(ok);
        CHECK(e.code() == ErrorCode::kOverlap);
      }
    }
    // No two regions overlap.
    const auto& regions = asc.regions();
    for (std::size_t i = 1; i < regions.size(); ++i) {
      CHECK(regions[i - 1].end() <= regions[i].base);
    }
    for (int q = 0; q < 100; ++q) {
      const std::uint64_t base = rng() % kSpace;
      const std::uint64_t len = 1 + rng() % (kSpace - base);
      const auto normal = asc.check_access(WorldId::kNormal, base, len, AccessMode::kRead);
      CHECK((normal == AccessDecision::kAllow) == bytes.normal_may_access(base, len));
      CHECK(asc.check_access(WorldId::kSecure, base, len, AccessMode::kWrite) == AccessDecision::kAllow);
    }
  }
}

TEST_CASE("world_switch examples and cost identity") {
  WorldContext ctx(WorldId::kNormal);
  ctx.world_switch(WorldId::kSecure);
  CHECK(ctx.current() == WorldId::kSecure);
  CHECK(ctx.switch_count() == 1);
  ctx.world_switch(WorldId::kSecure);
  CHECK(ctx.switch_count() == 1);

  WorldContext costly(WorldId::kNormal, 3);
  std::uint64_t expected = 0;
  for (int i = 0; i < 10; ++i) {
    costly.world_switch(i % 2 == 0 ? WorldId::kSecure : WorldId::kNormal);
    ++expected;
  }
  CHECK(costly.switch_count() == expected);
  CHECK(costly.switch_cost_units() == 30);

  std::mt19937_64 rng(5);
  WorldContext random_ctx(WorldId::kSecure, 7);
  for (int i = 0; i < 1000; ++i) {
    random_ctx.world_switch(rng() % 2 ? WorldId::kSecure : WorldId::kNormal);
    CHECK(random_ctx.switch_cost_units() == random_ctx.switch_count() * 7);
  }
}

TEST_CASE("physical memory enforces the controller") {
  AddressSpaceController asc;
  const auto sec = asc.carve_secure_region(0x1000, 0x100);
  const auto shr = asc.map_shared_region(0x2000, 0x100);
  PhysicalMemory mem(asc);
  mem.back(sec);
  mem.back(shr);
  std::vector<std::uint8_t> data{1, 2, 3, 4};
  mem.store(WorldId::kSecure, 0x1010, data);
  std::vector<std::uint8_t> out(4);
  mem.load(WorldId::kSecure, 0x1010, out);
  CHECK(out == data);
  CHECK(code_of([&] { mem.load(WorldId::kNormal, 0x1010, out); }) == ErrorCode::kAccessDenied);
  CHECK(code_of([&] { mem.store(WorldId::kNormal, 0x10FE, data); }) == ErrorCode::kAccessDenied);
  mem.store(WorldId::kNormal, 0x2000, data);
  CHECK(code_of([&] { mem.store(WorldId::kSecure, 0x20FE, data); }) == ErrorCode::kRange);
  CHECK(code_of([&] { mem.load(WorldId::kNormal, 0x5000, out); }) == ErrorCode::kRange);
}

TEST_CASE("region allocator") {
  AddressSpaceController asc;
  const auto sec = asc.carve_secure_region(0x1001, 64);
  RegionAllocator alloc(asc, sec);
  const auto a = alloc.allocate(10);
  CHECK(a % 8 == 0);
  CHECK(a >= 0x1001);
  const auto b = alloc.allocate(8);
  CHECK(b >= a + 10);
  CHECK(b + 8 <= 0x1001 + 64);
  CHECK(code_of([&] { alloc.allocate(64); }) == ErrorCode::kAllocation);
}

}  // TEST_SUITE
