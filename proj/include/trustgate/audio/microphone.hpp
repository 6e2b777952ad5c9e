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
#include <random>
#include <string>
#include <vector>

#include "trustgate/audio/i2s.hpp"
#include "trustgate/text.hpp"

namespace trustgate::audio {

struct CorpusConfig {
  std::vector<std::string> keywords = {"password", "pin", "account", "ssn", "salary"};
  double sensitivity_probability = 0.3;
  std::size_t vocab_size = 60;  // filler words, keywords excluded
  std::size_t min_words = 3;
  std::size_t max_words = 10;

  /// Throws kConfig on an unusable configuration.
  void validate() const;
};

/// Speech content of one utterance plus its ground-truth label.
struct LabeledText {
  std::string text;
  Sensitivity label = Sensitivity::kBenign;
};

/// Seeded generator of synthetic command-style utterances. A generated text
/// is sensitive iff it contains a configured keyword.
class CorpusGenerator {
 public:
  CorpusGenerator(CorpusConfig config, std::uint64_t seed);

  LabeledText next();
  std::vector<LabeledText> generate(std::size_t count);

  const std::vector<std::string>& filler() const { return filler_; }
  const CorpusConfig& config() const { return config_; }

 private:
  CorpusConfig config_;
  std::vector<std::string> filler_;
  std::mt19937_64 rng_;
};

/// Audio captured by the peripheral. `payload_text` and `truth_label` are a
/// test-harness side channel standing in for the speech the PCM would carry.
struct Utterance {
  std::vector<I2sFrame> frames;
  std::string payload_text;
  Sensitivity truth_label = Sensitivity::kBenign;
  friend bool operator==(const Utterance&, const Utterance&) = default;
};

/// Simulated I2S microphone.
class Microphone {
 public:
  Microphone(CorpusConfig config, std::uint64_t seed);

  /// Throws kRange when n == 0.
  Utterance capture(std::size_t n);

 private:
  CorpusGenerator corpus_;
  std::mt19937_64 pcm_rng_;
};

}  // namespace trustgate::audio
