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

#include "trustgate/relay/filter.hpp"

#include <cstdio>

#include "trustgate/error.hpp"
#include "trustgate/text.hpp"

namespace trustgate::relay {

std::string_view to_string(FilterAction action) {
  return action == FilterAction::kDrop ? "drop" : "mask";
}

FilterAction parse_filter_action(std::string_view name) {
  if (name == "drop") return FilterAction::kDrop;
  if (name == "mask") return FilterAction::kMask;
  throw Error(ErrorCode::kConfig, "unknown filter action '" + std::string(name) + "'");
}

std::string_view to_string(ActionTaken action) {
  switch (action) {
    case ActionTaken::kForwarded: return "forwarded";
    case ActionTaken::kMasked: return "masked";
    case ActionTaken::kDropped: return "dropped";
  }
  return "unknown";
}

void FilterPolicy::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kConfig, "threshold must lie in (0, 1)");
  }
  if (action == FilterAction::kMask && mask_token.empty()) {
    throw Error(ErrorCode::kConfig, "mask action needs a mask token");
  }
}

FilterOutcome filter(const ml::Verdict& verdict, const ml::Transcript& transcript,
                     const FilterPolicy& policy) {
  if (verdict.label == Sensitivity::kBenign) return {true, transcript.text, 0};
  if (policy.action == FilterAction::kDrop) return FilterOutcome::redacted();

  FilterOutcome out{true, {}, kFlagMasked};
  const auto words = split_words(transcript.text);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i != 0) out.payload.push_back(' ');
    out.payload += policy.mask_token;
  }
  return out;
}

std::string RedactionLog::format() const {
  std::string out;
  char line[128];
  for (const auto& r : records_) {
    std::snprintf(line, sizeof line, "%u %.6f %s %s\n", r.sequence, r.score,
                  std::string(to_string(r.label)).c_str(),
                  std::string(to_string(r.action)).c_str());
    out += line;
  }
  return out;
}

}  // namespace trustgate::relay
