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
#include <sstream>
#include <thread>

#include "support/generators.hpp"
#include "trustgate/driver/secure_driver.hpp"
#include "trustgate/error.hpp"
#include "trustgate/pta/bridge.hpp"
#include "trustgate/pta/messages.hpp"

using namespace trustgate;
using namespace trustgate::pta;
using tee::WorldId;

namespace {

struct Rig {
  tee::AddressSpaceController asc;
  tee::RegionId driver_region = asc.carve_secure_region(0x10000, 0x10000);
  tee::RegionId ta_region = asc.carve_secure_region(0x40000, 0x1000);
  tee::RegionId cold_region = asc.carve_secure_region(0x50000, 0x1000);  // never backed
  tee::PhysicalMemory memory{asc};
  tee::RegionAllocator alloc{asc, driver_region};
  driver::SecureDriver driver{memory, alloc, 256};
  Bridge bridge{driver, memory};
  tee::WorldContext ctx{WorldId::kSecure};

  Rig() { memory.back(ta_region); }

  void feed(std::size_t frames, std::string_view text = "hello world") {
    std::vector<audio::I2sFrame> f(frames, audio::I2sFrame{3, -3});
    driver.ingest(audio::encode_frames(f), text);
  }

  Command read_audio(std::uint32_t session, std::uint32_t frames, std::uint32_t length = 0x1000,
                     std::uint32_t offset = 0) {
    Command cmd;
    cmd.session = session;
    cmd.cmd_id = kCmdReadAudio;
    cmd.params[0] = MemRefParam{ta_region.value, offset, length};
    cmd.params[1] = ValueParam{frames, 0};
    return cmd;
  }

  Command status(std::uint32_t session) {
    Command cmd;
    cmd.session = session;
    cmd.cmd_id = kCmdGetStatus;
    return cmd;
  }
};

// Byte layout built by hand from the wire description.
void put32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
}

}  // namespace

TEST_SUITE("pta") {

TEST_CASE("sessions") {
  Rig rig;
  const auto a = rig.bridge.open_session();
  const auto b = rig.bridge.open_session();
  CHECK(a != b);
  CHECK(a != 0);
  CHECK(b != 0);
  for (int i = 0; i < 998; ++i) CHECK(rig.bridge.open_session() != 0);
  CHECK(rig.bridge.live_sessions() == 1000);

  CHECK(rig.bridge.close_session(a) == Status::kOk);
  CHECK(rig.bridge.close_session(a) == Status::kBadSession);
  CHECK(rig.bridge.invoke(rig.status(a), rig.ctx).status == Status::kBadSession);
  CHECK(rig.bridge.invoke(rig.status(b), rig.ctx).status == Status::kOk);
  CHECK(rig.bridge.invoke(rig.status(0), rig.ctx).status == Status::kBadSession);
}

TEST_CASE("close does not disturb other sessions") {
  Rig rig;
  const auto s1 = rig.bridge.open_session();
  const auto s2 = rig.bridge.open_session();
  const auto s3 = rig.bridge.open_session();
  CHECK(rig.bridge.close_session(s2) == Status::kOk);
  CHECK(rig.bridge.invoke(rig.status(s1), rig.ctx).status == Status::kOk);
  CHECK(rig.bridge.invoke(rig.status(s3), rig.ctx).status == Status::kOk);
}

TEST_CASE("get status") {
  Rig rig;
  const auto s = rig.bridge.open_session();
  auto resp = rig.bridge.invoke(rig.status(s), rig.ctx);
  CHECK(resp.status == Status::kOk);
  CHECK(std::get<ValueParam>(resp.params[0]).a == 0);
  CHECK(std::get<ValueParam>(resp.params[1]).a == 0);
  rig.feed(300);
  resp = rig.bridge.invoke(rig.status(s), rig.ctx);
  CHECK(std::get<ValueParam>(resp.params[0]).a == 256);
  CHECK(std::get<ValueParam>(resp.params[1]).a == 44);
  auto bad = rig.status(s);
  bad.params[2] = ValueParam{1, 1};
  CHECK(rig.bridge.invoke(bad, rig.ctx).status == Status::kBadParameters);
  CHECK(rig.ctx.switch_count() == 0);
}

TEST_CASE("read audio writes the block into secure memory") {
  Rig rig;
  const auto s = rig.bridge.open_session();
  rig.feed(16, "turn on the lights");
  const auto resp = rig.bridge.invoke(rig.read_audio(s, 16, 0x100, 0x10), rig.ctx);
  REQUIRE(resp.status == Status::kOk);
  const auto out = std::get<MemRefParam>(resp.params[0]);
  const auto info = std::get<ValueParam>(resp.params[1]);
  CHECK(out.offset == 0x10);
  CHECK(out.length == driver::encoded_size(16, 18));
  CHECK(info.a == 16);
  CHECK(info.b == 0);
  std::vector<std::uint8_t> image(out.length);
  rig.memory.load(WorldId::kSecure, 0x40010, image);
  const auto block = driver::decode_block(image);
  CHECK(block.frame_count == 16);
  CHECK(block.attached_text == "turn on the lights");
  CHECK(rig.driver.occupancy() == 0);
  CHECK(rig.ctx.switch_count() == 0);
}

TEST_CASE("read audio failures have no side effects") {
  Rig rig;
  const auto s = rig.bridge.open_session();
  rig.feed(16);
  const auto occupancy = rig.driver.occupancy();
  const auto seq = rig.driver.next_sequence();

  auto expect = [&](const Command& cmd, Status status, const tee::WorldContext& ctx) {
    const auto resp = rig.bridge.invoke(cmd, ctx);
    CHECK(resp.status == status);
    CHECK(resp == Response::failure(status));
    CHECK(rig.driver.occupancy() == occupancy);
    CHECK(rig.driver.next_sequence() == seq);
  };
  expect(rig.read_audio(s, 16, 10), Status::kShortBuffer, rig.ctx);
  expect(rig.read_audio(s, 17), Status::kNoData, rig.ctx);
  expect(rig.read_audio(s, 0), Status::kBadParameters, rig.ctx);
  expect(rig.read_audio(s, 16, 0x100, 0xF80), Status::kBadParameters, rig.ctx);
  auto cold = rig.read_audio(s, 16);
  std::get<MemRefParam>(cold.params[0]).region = rig.cold_region.value;
  expect(cold, Status::kBadParameters, rig.ctx);
  auto unknown_region = rig.read_audio(s, 16);
  std::get<MemRefParam>(unknown_region.params[0]).region = 77;
  expect(unknown_region, Status::kBadParameters, rig.ctx);
  auto unknown_cmd = rig.status(s);
  unknown_cmd.cmd_id = 0x99;
  expect(unknown_cmd, Status::kUnknownCommand, rig.ctx);
  tee::WorldContext normal(WorldId::kNormal);
  expect(rig.read_audio(s, 16), Status::kAccessDenied, normal);
  CHECK(rig.ctx.switch_count() == 0);
  CHECK(normal.switch_count() == 0);
}

TEST_CASE("concurrent invokes are serialized") {
  Rig rig;
  const auto s = rig.bridge.open_session();
  rig.feed(256);
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      tee::WorldContext ctx(WorldId::kSecure);
      for (int i = 0; i < 20; ++i) {
        auto cmd = rig.read_audio(s, 2, 64);
        if (rig.bridge.invoke(cmd, ctx).status == Status::kOk) ++ok;
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(ok.load() == 80);
  CHECK(rig.driver.occupancy() == 256 - 160);
  CHECK(rig.driver.next_sequence() == 80);
}

TEST_CASE("wire layout") {
  Command cmd;
  cmd.session = 7;
  cmd.cmd_id = kCmdReadAudio;
  cmd.params[0] = MemRefParam{2, 0x10, 0x200};
  cmd.params[1] = ValueParam{5, 6};
  std::vector<std::uint8_t> expected;
  put32(expected, 7);
  put32(expected, 1);
  put32(expected, 2);
  put32(expected, 2 | (0x10 << 8));
  put32(expected, 0x200);
  put32(expected, 1);
  put32(expected, 5);
  put32(expected, 6);
  for (int i = 0; i < 2; ++i) {
    put32(expected, 0);
    put32(expected, 0);
    put32(expected, 0);
  }
  CHECK(encode_command(cmd) == expected);
  CHECK(expected.size() == kCommandWireSize);
  CHECK(decode_command(expected) == cmd);

  const auto fail = encode_response(Response::failure(Status::kShortBuffer));
  CHECK(fail.size() == kResponseWireSize);
  CHECK(fail[0] == 0x10);
  CHECK(fail[3] == 0xFF);
}

TEST_CASE("malformed wire images") {
  std::mt19937_64 rng(8);
  const auto image = encode_command(gen::random_command(rng));
  auto truncated = image;
  truncated.pop_back();
  CHECK_THROWS_AS(decode_command(truncated), Error);
  auto bad_tag = image;
  bad_tag[8] = 9;
  CHECK_THROWS_AS(decode_command(bad_tag), Error);
  auto dirty_none = encode_command(Command{});
  dirty_none[12] = 1;
  CHECK_THROWS_AS(decode_command(dirty_none), Error);
  auto fail_with_out = encode_response(Response::failure(Status::kNoData));
  fail_with_out[4] = 1;  // slot 0 claims a value
  CHECK_THROWS_AS(decode_response(fail_with_out), Error);
}

TEST_CASE("property: wire round trips") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const auto cmd = gen::random_command(rng);
    const auto ci = encode_command(cmd);
    REQUIRE(decode_command(ci) == cmd);
    REQUIRE(encode_command(decode_command(ci)) == ci);
    const auto resp = gen::random_response(rng);
    const auto ri = encode_response(resp);
    REQUIRE(decode_response(ri) == resp);
    REQUIRE(encode_response(decode_response(ri)) == ri);
  }
}

TEST_CASE("replay log") {
  Rig rig;
  std::ostringstream log;
  rig.bridge.set_replay_sink(&log);
  const auto s = rig.bridge.open_session();
  rig.feed(4);
  const auto cmd = rig.read_audio(s, 4, 0x100);
  const auto resp = rig.bridge.invoke(cmd, rig.ctx);
  rig.bridge.invoke(rig.status(99), rig.ctx);
  std::istringstream in(log.str());
  std::string line;
  std::vector<ReplayEntry> entries;
  while (std::getline(in, line)) entries.push_back(parse_replay_line(line));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].command == cmd);
  CHECK(entries[0].response == resp);
  CHECK(entries[1].response.status == Status::kBadSession);
  CHECK(from_hex(to_hex(encode_command(cmd))) == encode_command(cmd));
  CHECK_THROWS_AS(parse_replay_line("zz"), Error);
}

}  // TEST_SUITE
