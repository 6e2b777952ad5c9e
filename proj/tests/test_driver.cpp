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
#include <thread>

#include "trustgate/driver/encoded_block.hpp"
#include "trustgate/driver/secure_driver.hpp"
#include "trustgate/error.hpp"

using namespace trustgate;
using namespace trustgate::driver;
using tee::WorldId;

namespace {

struct Rig {
  tee::AddressSpaceController asc;
  tee::RegionId region;
  tee::PhysicalMemory memory{asc};
  tee::RegionAllocator alloc;
  SecureDriver driver;

  explicit Rig(std::size_t capacity, std::uint64_t region_bytes = 64 * 1024)
      : region(asc.carve_secure_region(0x10000, region_bytes)),
        alloc(asc, region),
        driver(memory, alloc, capacity) {}

  // Every byte of the ring storage must refuse the normal world.
  void check_isolated() const {
    const auto base = driver.buffer_base();
    for (std::uint64_t i = 0; i < driver.buffer_bytes(); ++i) {
      REQUIRE(asc.check_access(WorldId::kNormal, base + i, 1, tee::AccessMode::kRead) ==
              tee::AccessDecision::kDeny);
    }
    std::vector<std::uint8_t> probe(4);
    REQUIRE_THROWS_AS(memory.load(WorldId::kNormal, base, probe), Error);
  }
};

std::vector<audio::I2sFrame> tagged(std::size_t n, std::size_t start = 0) {
  std::vector<audio::I2sFrame> frames;
  for (std::size_t i = 0; i < n; ++i) {
    const auto tag = static_cast<std::uint32_t>(start + i);
    frames.push_back({static_cast<std::int16_t>(tag & 0xFFFF), static_cast<std::int16_t>(tag >> 16)});
  }
  return frames;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_SUITE("driver") {

TEST_CASE("init") {
  Rig rig(256);
  CHECK(rig.driver.occupancy() == 0);
  CHECK(rig.driver.buffer_bytes() == 1024);
  rig.check_isolated();

  tee::AddressSpaceController asc;
  const auto small = asc.carve_secure_region(0x1000, 512);
  tee::PhysicalMemory mem(asc);
  tee::RegionAllocator alloc(asc, small);
  CHECK(code_of([&] { SecureDriver d(mem, alloc, 256); }) == ErrorCode::kAllocation);

  const auto shared = asc.map_shared_region(0x8000, 4096);
  tee::RegionAllocator shared_alloc(asc, shared);
  CHECK(code_of([&] { SecureDriver d(mem, shared_alloc, 16); }) == ErrorCode::kAllocation);
}

TEST_CASE("ingest examples") {
  Rig rig(256);
  CHECK(rig.driver.ingest(audio::encode_frames(tagged(10))) == 10);
  CHECK(rig.driver.occupancy() == 10);
  rig.check_isolated();

  Rig full(256);
  CHECK(full.driver.ingest(audio::encode_frames(tagged(300))) == 256);
  CHECK(full.driver.overrun_count() == 44);
  full.check_isolated();

  Rig empty(256);
  CHECK(empty.driver.ingest(audio::I2sBitstream{}) == 0);
  CHECK(empty.driver.occupancy() == 0);
  CHECK(empty.driver.overrun_count() == 0);

  auto bad = audio::encode_frames(tagged(2));
  bad.pop_back();
  CHECK(code_of([&] { rig.driver.ingest(bad); }) == ErrorCode::kMalformedStream);
  CHECK(rig.driver.occupancy() == 10);
}

TEST_CASE("read_block examples") {
  Rig rig(256);
  rig.driver.ingest(audio::encode_frames(tagged(20)), "turn on the lights");
  tee::WorldContext secure(WorldId::kSecure);
  tee::WorldContext normal(WorldId::kNormal);
  CHECK(code_of([&] { rig.driver.read_block(10, normal); }) == ErrorCode::kAccessDenied);
  CHECK(code_of([&] { rig.driver.read_block(0, secure); }) == ErrorCode::kRange);
  CHECK(code_of([&] { rig.driver.read_block(21, secure); }) == ErrorCode::kUnderflow);
  CHECK(rig.driver.occupancy() == 20);

  const auto expected_size = rig.driver.peek_encoded_size(10);
  const auto a = rig.driver.read_block(10, secure);
  rig.check_isolated();
  CHECK(a.frame_count == 10);
  CHECK(a.payload.size() == 40);
  CHECK(a.attached_text == "turn on the lights");
  CHECK(encode_block(a).size() == expected_size);
  const auto b = rig.driver.read_block(10, secure);
  CHECK(b.sequence == a.sequence + 1);
  CHECK(b.attached_text.empty());
  CHECK(secure.switch_count() == 0);
}

TEST_CASE("property: FIFO order and occupancy accounting") {
  std::mt19937_64 rng(21);
  Rig rig(128);
  tee::WorldContext secure(WorldId::kSecure);
  std::size_t produced = 0;
  std::size_t consumed = 0;
  std::uint64_t accepted_total = 0;
  for (int step = 0; step < 400; ++step) {
    if (rng() % 2 == 0) {
      const std::size_t n = rng() % 40;
      const auto accepted = rig.driver.ingest(audio::encode_frames(tagged(n, produced)));
      produced += accepted;
      accepted_total += accepted;
      // Rejected frames were never admitted, so their tags are reused.
    } else if (rig.driver.occupancy() > 0) {
      const std::size_t n = 1 + rng() % rig.driver.occupancy();
      const auto block = rig.driver.read_block(n, secure);
      const auto frames = block.frames();
      REQUIRE(frames == tagged(n, consumed));
      consumed += n;
    }
    REQUIRE(rig.driver.occupancy() == accepted_total - consumed);
    REQUIRE(rig.driver.occupancy() <= 128);
    rig.check_isolated();
  }
}

TEST_CASE("speech markers follow the frames they were captured with") {
  Rig rig(64);
  tee::WorldContext secure(WorldId::kSecure);
  rig.driver.ingest(audio::encode_frames(tagged(4)), "first");
  rig.driver.ingest(audio::encode_frames(tagged(4)), "second");
  CHECK(rig.driver.read_block(8, secure).attached_text == "first second");
  rig.driver.ingest(audio::encode_frames(tagged(4)), "third");
  CHECK(rig.driver.read_block(2, secure).attached_text == "third");
  CHECK(rig.driver.read_block(2, secure).attached_text.empty());
}

TEST_CASE("concurrent producer and consumer") {
  Rig rig(64);
  constexpr std::size_t kTotal = 20000;
  std::thread producer([&] {
    std::size_t sent = 0;
    while (sent < kTotal) {
      const std::size_t n = std::min<std::size_t>(7, kTotal - sent);
      const auto free = rig.driver.capacity() - rig.driver.occupancy();
      if (free < n) {
        std::this_thread::yield();
        continue;
      }
      REQUIRE(rig.driver.ingest(audio::encode_frames(tagged(n, sent))) == n);
      sent += n;
    }
  });
  tee::WorldContext secure(WorldId::kSecure);
  std::size_t got = 0;
  bool in_order = true;
  while (got < kTotal) {
    const auto occ = rig.driver.occupancy();
    if (occ == 0) {
      std::this_thread::yield();
      continue;
    }
    const auto block = rig.driver.read_block(occ, secure);
    in_order = in_order && block.frames() == tagged(occ, got);
    got += occ;
  }
  producer.join();
  CHECK(in_order);
  CHECK(rig.driver.overrun_count() == 0);
}

TEST_CASE("encoded block layout") {
  EncodedBlock block;
  block.sequence = 0x01020304;
  block.frame_count = 1;
  append_pcm(block.payload, {0x1122, -2});
  block.attached_text = "hi";
  const auto image = encode_block(block);
  const std::vector<std::uint8_t> expected = {'T', 'G', 'B', '1', 4, 3, 2, 1, 1, 0, 0, 0, 4, 0,
                                              0,   0,   0x22, 0x11, 0xFE, 0xFF, 2, 0, 0, 0, 'h', 'i'};
  CHECK(image == expected);
  CHECK(image.size() == encoded_size(1, 2));
  CHECK(decode_block(image) == block);

  auto bad_magic = image;
  bad_magic[0] = 'X';
  CHECK(code_of([&] { decode_block(bad_magic); }) == ErrorCode::kMalformedBlock);
  auto trailing = image;
  trailing.push_back(0);
  CHECK(code_of([&] { decode_block(trailing); }) == ErrorCode::kMalformedBlock);
  auto inconsistent = image;
  inconsistent[12] = 8;
  CHECK(code_of([&] { decode_block(inconsistent); }) == ErrorCode::kMalformedBlock);
}

}  // TEST_SUITE
