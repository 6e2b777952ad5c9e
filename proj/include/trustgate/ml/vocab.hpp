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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trustgate/driver/encoded_block.hpp"

namespace trustgate::ml {

using Token = std::uint32_t;
inline constexpr Token kUnknownToken = 0;

/// Word -> index map. Index 0 is the unknown word; known words take
/// 1..size()-1.
class Vocab {
 public:
  Vocab() = default;

  /// Words ordered by descending corpus frequency, ties broken
  /// lexicographically. `max_size` caps size() (0 = no cap).
  static Vocab build(std::span<const std::string> texts, std::size_t max_size = 0);
  static Vocab from_words(std::vector<std::string> words);

  Token lookup(std::string_view word) const;
  const std::string& word(Token token) const;
  std::size_t size() const { return words_.size() + 1; }
  const std::vector<std::string>& words() const { return words_; }

  /// One word per line, in index order starting at 1.
  void save(const std::filesystem::path& path) const;
  static Vocab load(const std::filesystem::path& path);

 private:
  std::vector<std::string> words_;  // words_[i] has index i + 1
  std::unordered_map<std::string, Token> index_;
};

/// Lowercase, split on non-alphanumeric runs, unknown words map to 0.
std::vector<Token> tokenize(std::string_view text, const Vocab& vocab);

/// Space-joined words; the unknown token renders as "<unk>".
std::string detokenize(std::span<const Token> tokens, const Vocab& vocab);

struct Transcript {
  std::string text;
};

/// Speech-recognition stand-in: returns the block's attached speech text.
/// Throws kMissingPayload when the block carries none.
Transcript transcribe(const driver::EncodedBlock& block);

}  // namespace trustgate::ml
