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

#include "trustgate/ml/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "trustgate/error.hpp"
#include "trustgate/text.hpp"

namespace trustgate::ml {

Vocab Vocab::build(std::span<const std::string> texts, std::size_t max_size) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : texts) {
    for (auto& w : split_words(t)) ++counts[std::move(w)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> words;
  for (auto& [w, n] : ranked) {
    if (max_size != 0 && words.size() + 1 >= max_size) break;
    words.push_back(w);
  }
  return from_words(std::move(words));
}

Vocab Vocab::from_words(std::vector<std::string> words) {
  Vocab v;
  for (auto& w : words) {
    if (w.empty() || v.index_.contains(w)) {
      throw Error(ErrorCode::kConfig, "vocabulary word '" + w + "' is empty or duplicated");
    }
    v.index_.emplace(w, static_cast<Token>(v.words_.size() + 1));
    v.words_.push_back(std::move(w));
  }
  return v;
}

Token Vocab::lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnknownToken : it->second;
}

const std::string& Vocab::word(Token token) const {
  static const std::string kUnknown = "<unk>";
  return token == kUnknownToken || token > words_.size() ? kUnknown : words_[token - 1];
}

void Vocab::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& w : words_) out << w << '\n';
}

Vocab Vocab::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::vector<std::string> words;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) words.push_back(line);
  }
  return from_words(std::move(words));
}

std::vector<Token> tokenize(std::string_view text, const Vocab& vocab) {
  std::vector<Token> tokens;
  for (const auto& w : split_words(text)) tokens.push_back(vocab.lookup(w));
  return tokens;
}

std::string detokenize(std::span<const Token> tokens, const Vocab& vocab) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out += vocab.word(tokens[i]);
  }
  return out;
}

Transcript transcribe(const driver::EncodedBlock& block) {
  if (block.attached_text.empty()) {
    throw Error(ErrorCode::kMissingPayload,
                "block " + std::to_string(block.sequence) + " carries no speech");
  }
  return {block.attached_text};
}

}  // namespace trustgate::ml
