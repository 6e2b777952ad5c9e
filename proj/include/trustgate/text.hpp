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
#include <string>
#include <string_view>
#include <vector>

namespace trustgate {

enum class Sensitivity : std::uint8_t { kBenign, kSensitive };

std::string_view to_string(Sensitivity label);

/// Lowercases ASCII and splits on every run of non-alphanumeric bytes.
/// This is the one word-splitting rule shared by the corpus generator,
/// the tokenizer and the mask filter.
std::vector<std::string> split_words(std::string_view text);

/// Ground-truth rule: sensitive iff any word of `text` is in `keywords`.
Sensitivity keyword_rule(std::string_view text, const std::vector<std::string>& keywords);

}  // namespace trustgate
