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

#include <limits>
#include <random>

#include "support/oracles.hpp"
#include "trustgate/audio/i2s.hpp"
#include "trustgate/audio/microphone.hpp"
#include "trustgate/error.hpp"
#include "trustgate/text.hpp"

using namespace trustgate;
using namespace trustgate::audio;

namespace {

bool matches_timeline(const I2sBitstream& bits, I2sFrame f) {
  const auto expected = oracle::i2s_timeline(f.left, f.right);
  if (bits.size() != expected.size()) return false;
  for (std::size_t c = 0; c < bits.size(); ++c) {
    if (bits[c].ws != expected[c].first || bits[c].sd != expected[c].second) return false;
  }
  return true;
}

ErrorCode decode_error(const I2sBitstream& bits) {
  try {
    (void)decode_bitstream(bits);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_SUITE("audio") {

TEST_CASE("silence encodes to all-zero data") {
  const auto bits = encode_frame({0, 0});
  REQUIRE(bits.size() == 32);
  for (const auto& c : bits) CHECK(c.sd == 0);
}

TEST_CASE("left LSB lands on the first clock of the right window") {
  const auto bits = encode_frame({1, 0});
  for (std::size_t c = 0; c < bits.size(); ++c) {
    CHECK(bits[c].sd == (c == 16 ? 1 : 0));
    CHECK(bits[c].ws == (c < 16 ? 0 : 1));
  }
  CHECK(matches_timeline(bits, {1, 0}));
}

TEST_CASE("encoder matches the hand-built timeline") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const I2sFrame f{static_cast<std::int16_t>(rng()), static_cast<std::int16_t>(rng())};
    REQUIRE(matches_timeline(encode_frame(f), f));
  }
}

TEST_CASE("round trip on random frames and corners") {
  std::mt19937_64 rng(4);
  std::vector<I2sFrame> frames;
  for (int i = 0; i < 1000; ++i) {
    frames.push_back({static_cast<std::int16_t>(rng()), static_cast<std::int16_t>(rng())});
  }
  constexpr auto lo = std::numeric_limits<std::int16_t>::min();
  constexpr auto hi = std::numeric_limits<std::int16_t>::max();
  for (auto l : {lo, hi, std::int16_t{0}, std::int16_t{-1}}) {
    for (auto r : {lo, hi, std::int16_t{0}, std::int16_t{-1}}) frames.push_back({l, r});
  }
  const auto bits = encode_frames(frames);
  CHECK(bits.size() == frames.size() * 2 * kWordLength);
  CHECK(decode_bitstream(bits) == frames);
  CHECK(decode_bitstream(I2sBitstream{}).empty());
}

TEST_CASE("malformed streams are rejected") {
  auto bits = encode_frames(std::vector<I2sFrame>{{5, -5}, {7, 9}});
  auto short_run = bits;
  short_run[15].ws = 1;  // left window of 15 clocks
  CHECK(decode_error(short_run) == ErrorCode::kMalformedStream);
  auto truncated = bits;
  truncated.pop_back();
  CHECK(decode_error(truncated) == ErrorCode::kMalformedStream);
  auto bad_level = bits;
  bad_level[3].sd = 2;
  CHECK(decode_error(bad_level) == ErrorCode::kMalformedStream);
}

TEST_CASE("unsupported word width") {
  CHECK_THROWS_AS(encode_frame({1, 1}, 24), Error);
  CHECK_THROWS_AS(decode_bitstream(I2sBitstream(48), 24), Error);
}

TEST_CASE("microphone determinism and labelling") {
  CorpusConfig cfg;
  Microphone a(cfg, 42);
  Microphone b(cfg, 42);
  const auto ua = a.capture(160);
  CHECK(ua == b.capture(160));
  CHECK(ua.frames.size() == 160);
  CHECK(ua.truth_label == keyword_rule(ua.payload_text, cfg.keywords));
  CHECK_THROWS_AS(a.capture(0), Error);
  CHECK(keyword_rule("my password is x", {"password"}) == Sensitivity::kSensitive);
  CHECK(keyword_rule("my passwords are x", {"password"}) == Sensitivity::kBenign);
}

TEST_CASE("generator sensitive fraction") {
  CorpusConfig cfg;
  cfg.sensitivity_probability = 0.3;
  CorpusGenerator gen(cfg, 9);
  const auto corpus = gen.generate(1000);
  int sensitive = 0;
  for (const auto& u : corpus) {
    // Counting oracle: label from a direct keyword scan of the words.
    bool hit = false;
    for (const auto& w : split_words(u.text)) {
      for (const auto& k : cfg.keywords) hit = hit || (w == k);
    }
    CHECK(hit == (u.label == Sensitivity::kSensitive));
    sensitive += hit;
  }
  CHECK(std::abs(sensitive / 1000.0 - 0.3) <= 0.05);

  CorpusGenerator again(cfg, 9);
  const auto corpus2 = again.generate(1000);
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(corpus[i].text == corpus2[i].text);
}

TEST_CASE("generator config validation") {
  CorpusConfig cfg;
  cfg.sensitivity_probability = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.keywords.clear();
  cfg.sensitivity_probability = 0.2;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.min_words = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

}  // TEST_SUITE
