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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trustgate::trace {

enum class Direction : std::uint8_t { kEnter, kExit };

/// One line of a driver call trace: "<timestamp> <E|X> <function> <task>".
struct TraceEvent {
  std::uint64_t timestamp = 0;
  Direction direction = Direction::kEnter;
  std::string function;
  std::string task;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Parses a trace log. Blank lines and lines starting with '#' are skipped.
/// Throws kParse (with the 1-based line number) on malformed lines or a
/// timestamp that goes backwards within a task, and kUnbalancedTrace naming
/// every function still entered when the input ends.
std::vector<TraceEvent> parse_trace(std::string_view text);

std::string render_trace(const std::vector<TraceEvent>& events);

/// Dynamic call graph of one task.
struct CallGraph {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, std::uint64_t> edges;  // (caller, callee) -> count
  std::set<std::string> roots;
};

using TaskGraphs = std::map<std::string, CallGraph>;

/// Replays each task's events on its own call stack. Throws kMismatchedExit
/// when an exit does not match the innermost open call.
TaskGraphs build_callgraphs(const std::vector<TraceEvent>& events);

/// Union over `tasks` of everything reachable from each task's roots.
/// Throws kUnknownTask.
std::set<std::string> minimal_set(const TaskGraphs& graphs, const std::vector<std::string>& tasks);

struct ExclusionReport {
  std::vector<std::string> inventory;
  std::vector<std::string> required;   // inventory order
  std::vector<std::string> excluded;   // inventory order
  std::vector<std::string> directives; // one per excluded function
  double reduction_ratio = 0.0;

  /// Sections [required], [excluded], [directives] and a final
  /// "[stats] inventory=N required=K excluded=M ratio=R" line.
  std::string format() const;

  /// C header defining every directive, for the driver build.
  std::string format_header() const;
};

/// Throws kUnknownFunction when a required function is missing from the
/// inventory (the inventory is stale).
ExclusionReport emit_report(const std::vector<std::string>& inventory,
                            const std::set<std::string>& required);

std::string directive_for(std::string_view function);

/// One function per line; blank lines and '#' comments skipped.
std::vector<std::string> parse_inventory(std::string_view text);

}  // namespace trustgate::trace
