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

#include "trustgate/ml/classifier.hpp"
#include "trustgate/ml/vocab.hpp"

namespace trustgate::relay {

enum class FilterAction : std::uint8_t { kDrop, kMask };

std::string_view to_string(FilterAction action);
FilterAction parse_filter_action(std::string_view name);

struct FilterPolicy {
  double threshold = 0.5;
  FilterAction action = FilterAction::kDrop;
  std::string mask_token = "\xE2\x96\x87";  // U+2587 LOWER SEVEN EIGHTHS BLOCK

  /// Throws kConfig on a threshold outside (0, 1) or a mask action without a token.
  void validate() const;
};

inline constexpr std::uint32_t kFlagMasked = 1u << 0;

/// Result of filtering one utterance. `forward` is false for a redaction,
/// in which case nothing leaves the secure world.
struct FilterOutcome {
  bool forward = false;
  std::string payload;
  std::uint32_t flags = 0;

  static FilterOutcome redacted() { return {}; }
};

/// Benign -> forward the text unchanged. Sensitive -> drop, or forward with
/// every word replaced by the mask token.
FilterOutcome filter(const ml::Verdict& verdict, const ml::Transcript& transcript,
                     const FilterPolicy& policy);

enum class ActionTaken : std::uint8_t { kForwarded, kMasked, kDropped };

std::string_view to_string(ActionTaken action);

struct RedactionRecord {
  std::uint32_t sequence = 0;
  double score = 0.0;
  Sensitivity label = Sensitivity::kBenign;
  ActionTaken action = ActionTaken::kForwarded;
};

/// One record per classified utterance. Export writes one
/// "seq score label action" line per record.
class RedactionLog {
 public:
  void record(RedactionRecord r) { records_.push_back(r); }
  const std::vector<RedactionRecord>& records() const { return records_; }
  std::string format() const;

 private:
  std::vector<RedactionRecord> records_;
};

}  // namespace trustgate::relay
