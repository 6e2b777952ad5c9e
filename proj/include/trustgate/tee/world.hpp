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
#include <string_view>

namespace trustgate::tee {

enum class WorldId : std::uint8_t { kSecure, kNormal };

std::string_view to_string(WorldId world);

/// Execution context of one pipeline executor. Tracks which world is
/// currently running and what the transitions between worlds have cost.
class WorldContext {
 public:
  explicit WorldContext(WorldId start = WorldId::kNormal, std::uint64_t cost_per_switch = 1)
      : current_(start), cost_per_switch_(cost_per_switch) {}

  /// Moves execution to `target`. Switching to the world already running
  /// is a no-op and costs nothing.
  void world_switch(WorldId target) {
    if (target == current_) return;
    current_ = target;
    ++switch_count_;
    switch_cost_units_ += cost_per_switch_;
  }

  WorldId current() const { return current_; }
  std::uint64_t switch_count() const { return switch_count_; }
  std::uint64_t switch_cost_units() const { return switch_cost_units_; }
  std::uint64_t cost_per_switch() const { return cost_per_switch_; }

 private:
  WorldId current_;
  std::uint64_t cost_per_switch_;
  std::uint64_t switch_count_ = 0;
  std::uint64_t switch_cost_units_ = 0;
};

}  // namespace trustgate::tee
