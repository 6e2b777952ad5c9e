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

#include "trustgate/audio/microphone.hpp"

#include <algorithm>
#include <array>

#include "trustgate/error.hpp"

namespace trustgate::audio {

namespace {

constexpr std::array<std::string_view, 64> kBaseWords = {
    "turn", "on", "off", "the", "lights", "play", "music", "in", "kitchen", "living",
    "room", "what", "is", "weather", "today", "set", "a", "timer", "for", "ten",
    "minutes", "call", "mom", "remind", "me", "to", "buy", "milk", "open", "door",
    "close", "garage", "volume", "up", "down", "next", "song", "stop", "alarm", "at",
    "seven", "how", "far", "station", "add", "eggs", "list", "tell", "joke", "news",
    "dim", "bedroom", "start", "vacuum", "lock", "front", "show", "camera", "temperature", "degrees",
    "order", "pizza", "good", "morning"};

std::vector<std::string> make_filler(const CorpusConfig& config) {
  std::vector<std::string> words;
  for (auto w : kBaseWords) {
    if (words.size() == config.vocab_size) break;
    if (std::find(config.keywords.begin(), config.keywords.end(), w) == config.keywords.end()) {
      words.emplace_back(w);
    }
  }
  for (std::size_t i = 0; words.size() < config.vocab_size; ++i) {
    words.push_back("term" + std::to_string(i));
  }
  return words;
}

}  // namespace

void CorpusConfig::validate() const {
  if (keywords.empty()) throw Error(ErrorCode::kConfig, "keyword list is empty");
  for (const auto& k : keywords) {
    auto words = split_words(k);
    if (words.size() != 1 || words.front() != k) {
      throw Error(ErrorCode::kConfig, "keyword '" + k + "' is not a single lowercase word");
    }
  }
  if (!(sensitivity_probability >= 0.0 && sensitivity_probability <= 1.0)) {
    throw Error(ErrorCode::kConfig, "sensitivity probability outside [0,1]");
  }
  if (vocab_size == 0) throw Error(ErrorCode::kConfig, "vocabulary size must be positive");
  if (min_words == 0 || min_words > max_words) {
    throw Error(ErrorCode::kConfig, "utterance length range is empty");
  }
}

CorpusGenerator::CorpusGenerator(CorpusConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
  config_.validate();
  filler_ = make_filler(config_);
}

LabeledText CorpusGenerator::next() {
  std::bernoulli_distribution sensitive(config_.sensitivity_probability);
  std::uniform_int_distribution<std::size_t> length(config_.min_words, config_.max_words);
  std::uniform_int_distribution<std::size_t> pick_filler(0, filler_.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_keyword(0, config_.keywords.size() - 1);

  const bool is_sensitive = sensitive(rng_);
  const std::size_t n = length(rng_);
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) words.push_back(filler_[pick_filler(rng_)]);
  if (is_sensitive) {
    // One keyword always; a second one a quarter of the time.
    std::uniform_int_distribution<std::size_t> pos(0, n - 1);
    words[pos(rng_)] = config_.keywords[pick_keyword(rng_)];
    if (n > 1 && std::bernoulli_distribution(0.25)(rng_)) {
      words[pos(rng_)] = config_.keywords[pick_keyword(rng_)];
    }
  }

  LabeledText out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i != 0) out.text.push_back(' ');
    out.text += words[i];
  }
  out.label = keyword_rule(out.text, config_.keywords);
  return out;
}

std::vector<LabeledText> CorpusGenerator::generate(std::size_t count) {
  std::vector<LabeledText> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
  return out;
}

Microphone::Microphone(CorpusConfig config, std::uint64_t seed)
    : corpus_(std::move(config), seed), pcm_rng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

Utterance Microphone::capture(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kRange, "capture of zero frames");
  std::uniform_int_distribution<int> sample(-32768, 32767);
  Utterance u;
  u.frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto l = static_cast<std::int16_t>(sample(pcm_rng_));
    auto r = static_cast<std::int16_t>(sample(pcm_rng_));
    u.frames.push_back({l, r});
  }
  auto labeled = corpus_.next();
  u.payload_text = std::move(labeled.text);
  u.truth_label = labeled.label;
  return u;
}

}  // namespace trustgate::audio
