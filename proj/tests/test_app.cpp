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

#include <fstream>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "trustgate/app/bounded_queue.hpp"
#include "trustgate/app/config.hpp"
#include "trustgate/app/corpus_file.hpp"
#include "trustgate/app/pipeline.hpp"
#include "trustgate/error.hpp"
#include "trustgate/relay/mock_cloud.hpp"

using namespace trustgate;
using namespace trustgate::app;

namespace {

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::vector<std::string> payloads(const std::vector<relay::RelayPacket>& packets) {
  std::vector<std::string> out;
  for (const auto& p : packets) out.push_back(p.payload);
  return out;
}

void check_identities(const PipelineResult& r, const PipelineConfig& c) {
  const auto& m = r.metrics;
  CHECK(m.switches == 2 * m.forwarded);
  CHECK(m.cost_units == m.switches * c.cost_per_switch);
  CHECK(m.processed == c.utterances);
  CHECK(m.latency_us.size() == m.processed);
  CHECK(r.redaction_log.records().size() == m.processed);
  if (c.policy.action == relay::FilterAction::kDrop) CHECK(m.forwarded + m.redacted == m.processed);
  CHECK(r.setup_switches == 4);
}

class ThrowingClassifier final : public ml::Classifier {
 public:
  double score(const ml::Transcript&) const override {
    throw Error(ErrorCode::kRange, "boom");
  }
  std::string name() const override { return "throwing"; }
};

}  // namespace

TEST_SUITE("app") {

TEST_CASE("bounded queue") {
  BoundedQueue<int> q(2);
  CHECK(q.push(1));
  CHECK(q.push(2));
  CHECK(*q.pop() == 1);
  q.close();
  CHECK_FALSE(q.push(3));
  CHECK(*q.pop() == 2);
  CHECK_FALSE(q.pop().has_value());
}

TEST_CASE("config file, unknown keys and round trip") {
  const auto dir = oracle::temp_dir("config");
  write(dir / "a.ini",
        "seed = 7\nutterances = 12\n\n[generator]\nkeywords = pin, ssn\nsensitivity = 0.25\n"
        "[classifier]\narchitecture = cnn\nlr = 0.125\nepochs = 9\n"
        "[policy]\nthreshold = 0.4\naction = mask\nmask_token = ###\n");
  const auto c = load_config(dir / "a.ini");
  CHECK(c.seed == 7);
  CHECK(c.utterances == 12);
  CHECK(c.generator.keywords == std::vector<std::string>{"pin", "ssn"});
  CHECK(c.generator.sensitivity_probability == 0.25);
  CHECK(c.classifier.architecture == "cnn");
  CHECK(c.classifier.hyperparams.learning_rate == 0.125);
  CHECK(c.classifier.hyperparams.epochs == 9);
  CHECK(c.policy.threshold == 0.4);
  CHECK(c.policy.action == relay::FilterAction::kMask);
  CHECK(c.policy.mask_token == "###");
  CHECK(c.frames_per_utterance == PipelineConfig{}.frames_per_utterance);

  write(dir / "b.ini", render_config(c));
  CHECK(render_config(load_config(dir / "b.ini")) == render_config(c));

  write(dir / "bad.ini", "[policy]\ncolour = red\n");
  try {
    load_config(dir / "bad.ini");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    CHECK(std::string(e.what()).find("policy.colour") != std::string::npos);
  }
  write(dir / "badnum.ini", "seed = many\n");
  CHECK_THROWS_AS(load_config(dir / "badnum.ini"), Error);
  CHECK_THROWS_AS(load_config(dir / "missing.ini"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config validation") {
  PipelineConfig c;
  CHECK_NOTHROW(c.validate());
  c.policy.threshold = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.driver_capacity = 10;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.classifier.architecture = "cnn";
  c.classifier.model_path = "/nonexistent/model.bin";
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/model.bin") != std::string::npos);
  }
  c = {};
  c.classifier.architecture = "svm";
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("corpus file round trip") {
  const auto dir = oracle::temp_dir("corpus");
  audio::CorpusGenerator gen({}, 3);
  const auto corpus = gen.generate(50);
  write_corpus(dir / "c.tsv", corpus);
  const auto back = read_corpus(dir / "c.tsv");
  REQUIRE(back.size() == corpus.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].text == corpus[i].text);
    CHECK(back[i].label == corpus[i].label);
  }
  write(dir / "bad.tsv", "benign\thello\nmaybe\tthere\n");
  try {
    read_corpus(dir / "bad.tsv");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("oracle pipeline leaks nothing under Drop") {
  PipelineConfig c;
  c.utterances = 100;
  const auto r = run_pipeline(c);
  check_identities(r, c);
  std::set<std::string> sensitive;
  for (std::size_t i = 0; i < r.truth.size(); ++i) {
    if (r.truth[i] == Sensitivity::kSensitive) sensitive.insert(r.speech[i]);
  }
  CHECK_FALSE(sensitive.empty());
  CHECK(payloads(r.cloud_received) == payloads(r.forwarded));
  for (const auto& p : r.cloud_received) CHECK_FALSE(sensitive.contains(p.payload));
  for (std::size_t i = 1; i < r.cloud_received.size(); ++i) {
    CHECK(r.cloud_received[i].sequence > r.cloud_received[i - 1].sequence);
  }
}

TEST_CASE("no sensitive speech means nothing is redacted") {
  PipelineConfig c;
  c.utterances = 100;
  c.generator.sensitivity_probability = 0;
  const auto r = run_pipeline(c);
  CHECK(r.metrics.redacted == 0);
  CHECK(r.metrics.forwarded == 100);
  CHECK(r.metrics.switches == 200);
}

TEST_CASE("mask policy keeps keywords off the wire") {
  PipelineConfig c;
  c.utterances = 80;
  c.cost_per_switch = 3;
  c.policy.action = relay::FilterAction::kMask;
  const auto r = run_pipeline(c);
  check_identities(r, c);
  CHECK(r.metrics.forwarded == 80);
  std::size_t masked = 0;
  for (const auto& p : r.cloud_received) {
    for (const auto& w : split_words(p.payload)) {
      for (const auto& k : c.generator.keywords) CHECK(w != k);
    }
    masked += (p.flags & relay::kFlagMasked) != 0;
  }
  CHECK(masked == r.metrics.sensitive);
}

TEST_CASE("pipeline is deterministic") {
  PipelineConfig c;
  c.utterances = 60;
  c.seed = 1234;
  const auto a = run_pipeline(c);
  const auto b = run_pipeline(c);
  auto strip = [](RunMetrics m) {
    m.latency_us.clear();
    return m.to_json();
  };
  CHECK(strip(a.metrics) == strip(b.metrics));
  CHECK(a.cloud_received == b.cloud_received);
  CHECK(a.redaction_log.format() == b.redaction_log.format());
}

TEST_CASE("learned classifier trained inline") {
  PipelineConfig c;
  c.utterances = 40;
  c.classifier.architecture = "cnn";
  c.classifier.train_utterances = 200;
  c.classifier.hyperparams.epochs = 60;
  const auto classifier = make_classifier(c);
  CHECK(classifier->name() == "cnn");
  const auto r = run_pipeline(c, *classifier);
  check_identities(r, c);
}

TEST_CASE("external endpoint and replay hook") {
  relay::MockCloud cloud({"127.0.0.1", 0});
  PipelineConfig c;
  c.utterances = 30;
  c.endpoint = cloud.endpoint().to_string();
  std::ostringstream replay;
  auto classifier = make_classifier(c);
  const auto r = run_pipeline(c, *classifier, {&replay});
  cloud.stop();
  CHECK(r.cloud_received.empty());
  CHECK(payloads(cloud.received()) == payloads(r.forwarded));
  std::size_t lines = 0;
  for (char ch : replay.str()) lines += ch == '\n';
  CHECK(lines == 30);
}

TEST_CASE("errors name the stage") {
  PipelineConfig c;
  c.utterances = 5;
  ThrowingClassifier broken;
  try {
    run_pipeline(c, broken);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRange);
    CHECK(std::string(e.what()).find("stage classify") != std::string::npos);
  }

  std::uint16_t dead_port = 0;
  {
    relay::MockCloud tmp({"127.0.0.1", 0});
    dead_port = tmp.endpoint().port;
  }
  c.endpoint = "127.0.0.1:" + std::to_string(dead_port);
  {
    ml::KeywordOracle oracle(c.generator.keywords);
    try {
      run_pipeline(c, oracle);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kConnect);
      CHECK(std::string(e.what()).find("stage handshake") != std::string::npos);
    }
  }
}

TEST_CASE("metrics JSON keys") {
  RunMetrics m;
  m.processed = 2;
  m.latency_us = {5, 6};
  const auto j = m.to_json();
  for (const char* key : {"processed", "sensitive", "redacted", "forwarded", "switches",
                          "cost_units", "bytes_sent", "latency_us"}) {
    CHECK(j.find(std::string("\"") + key + "\"") != std::string::npos);
  }
}

}  // TEST_SUITE
