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

#include "trustgate/text.hpp"

#include <algorithm>
#include <cctype>

namespace trustgate {

std::string_view to_string(Sensitivity label) {
  return label == Sensitivity::kSensitive ? "sensitive" : "benign";
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) != 0) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

Sensitivity keyword_rule(std::string_view text, const std::vector<std::string>& keywords) {
  for (const auto& w : split_words(text)) {
    if (std::find(keywords.begin(), keywords.end(), w) != keywords.end()) {
      return Sensitivity::kSensitive;
    }
  }
  return Sensitivity::kBenign;
}

}  // namespace trustgate
