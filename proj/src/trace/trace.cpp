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

#include "trustgate/trace/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <deque>
#include <sstream>

#include "trustgate/error.hpp"

namespace trustgate::trace {

namespace {

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool skippable(std::string_view line) {
  auto first = line.find_first_not_of(" \t");
  return first == std::string_view::npos || line[first] == '#';
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& reason) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + reason);
}

}  // namespace

std::vector<TraceEvent> parse_trace(std::string_view text) {
  std::vector<TraceEvent> events;
  std::map<std::string, std::uint64_t> last_timestamp;
  std::map<std::string, std::vector<std::string>> open;  // task -> entered, not exited

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto line_no = i + 1;
    if (skippable(line)) continue;

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto sp = line.find(' ', pos);
      if (sp == std::string_view::npos) sp = line.size();
      fields.push_back(line.substr(pos, sp - pos));
      pos = sp + 1;
    }
    if (fields.size() != 4) parse_error(line_no, "expected 4 single-space separated fields");

    TraceEvent ev;
    auto ts = fields[0];
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), ev.timestamp);
    if (ts.empty() || ec != std::errc() || ptr != ts.data() + ts.size()) {
      parse_error(line_no, "invalid timestamp '" + std::string(ts) + "'");
    }
    if (fields[1] == "E") {
      ev.direction = Direction::kEnter;
    } else if (fields[1] == "X") {
      ev.direction = Direction::kExit;
    } else {
      parse_error(line_no, "unknown direction '" + std::string(fields[1]) + "'");
    }
    if (!is_identifier(fields[2])) parse_error(line_no, "invalid function name");
    if (!is_identifier(fields[3])) parse_error(line_no, "invalid task name");
    ev.function = fields[2];
    ev.task = fields[3];

    auto [it, fresh] = last_timestamp.try_emplace(ev.task, ev.timestamp);
    if (!fresh) {
      if (ev.timestamp < it->second) parse_error(line_no, "timestamp goes backwards");
      it->second = ev.timestamp;
    }

    auto& stack = open[ev.task];
    if (ev.direction == Direction::kEnter) {
      stack.push_back(ev.function);
    } else {
      // Only balance is checked here; ordering is checked by build_callgraphs.
      auto found = std::find(stack.rbegin(), stack.rend(), ev.function);
      if (found == stack.rend()) {
        throw Error(ErrorCode::kUnbalancedTrace, "line " + std::to_string(line_no) + ": exit from '" +
                                                     ev.function + "' without a matching enter");
      }
      stack.erase(std::next(found).base());
    }
    events.push_back(std::move(ev));
  }

  std::string unbalanced;
  for (const auto& [task, stack] : open) {
    for (const auto& fn : stack) {
      if (!unbalanced.empty()) unbalanced += ", ";
      unbalanced += fn + " (task " + task + ")";
    }
  }
  if (!unbalanced.empty()) throw Error(ErrorCode::kUnbalancedTrace, "never exited: " + unbalanced);
  return events;
}

std::string render_trace(const std::vector<TraceEvent>& events) {
  std::string out;
  for (const auto& ev : events) {
    out += std::to_string(ev.timestamp);
    out += ev.direction == Direction::kEnter ? " E " : " X ";
    out += ev.function;
    out += ' ';
    out += ev.task;
    out += '\n';
  }
  return out;
}

TaskGraphs build_callgraphs(const std::vector<TraceEvent>& events) {
  TaskGraphs graphs;
  std::map<std::string, std::vector<std::string>> stacks;
  for (const auto& ev : events) {
    auto& graph = graphs[ev.task];
    auto& stack = stacks[ev.task];
    if (ev.direction == Direction::kEnter) {
      graph.nodes.insert(ev.function);
      if (stack.empty()) {
        graph.roots.insert(ev.function);
      } else {
        ++graph.edges[{stack.back(), ev.function}];
      }
      stack.push_back(ev.function);
    } else {
      if (stack.empty() || stack.back() != ev.function) {
        throw Error(ErrorCode::kMismatchedExit,
                    "task " + ev.task + ": exit from '" + ev.function + "' while '" +
                        (stack.empty() ? std::string("<nothing>") : stack.back()) + "' is open");
      }
      stack.pop_back();
    }
  }
  return graphs;
}

std::set<std::string> minimal_set(const TaskGraphs& graphs, const std::vector<std::string>& tasks) {
  std::set<std::string> required;
  for (const auto& task : tasks) {
    auto it = graphs.find(task);
    if (it == graphs.end()) throw Error(ErrorCode::kUnknownTask, "no trace for task '" + task + "'");
    const auto& g = it->second;

    std::map<std::string, std::vector<std::string>> callees;
    for (const auto& [edge, count] : g.edges) callees[edge.first].push_back(edge.second);

    std::deque<std::string> frontier(g.roots.begin(), g.roots.end());
    std::set<std::string> seen(g.roots.begin(), g.roots.end());
    while (!frontier.empty()) {
      auto fn = std::move(frontier.front());
      frontier.pop_front();
      for (const auto& next : callees[fn]) {
        if (seen.insert(next).second) frontier.push_back(next);
      }
    }
    required.merge(seen);
  }
  return required;
}

std::string directive_for(std::string_view function) {
  std::string out = "CFG_EXCL_";
  for (char c : function) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

ExclusionReport emit_report(const std::vector<std::string>& inventory,
                            const std::set<std::string>& required) {
  const std::set<std::string> known(inventory.begin(), inventory.end());
  for (const auto& fn : required) {
    if (!known.contains(fn)) {
      throw Error(ErrorCode::kUnknownFunction,
                  "traced function '" + fn + "' is not in the inventory");
    }
  }
  ExclusionReport report;
  std::set<std::string> placed;
  for (const auto& fn : inventory) {
    if (!placed.insert(fn).second) continue;
    report.inventory.push_back(fn);
    if (required.contains(fn)) {
      report.required.push_back(fn);
    } else {
      report.excluded.push_back(fn);
      report.directives.push_back(directive_for(fn));
    }
  }
  report.reduction_ratio =
      report.inventory.empty()
          ? 0.0
          : static_cast<double>(report.excluded.size()) / static_cast<double>(report.inventory.size());
  return report;
}

std::string ExclusionReport::format() const {
  std::ostringstream out;
  out << "[required]\n";
  for (const auto& fn : required) out << fn << '\n';
  out << "[excluded]\n";
  for (const auto& fn : excluded) out << fn << '\n';
  out << "[directives]\n";
  for (const auto& d : directives) out << d << '\n';
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.4f", reduction_ratio);
  out << "[stats] inventory=" << inventory.size() << " required=" << required.size()
      << " excluded=" << excluded.size() << " ratio=" << ratio << '\n';
  return out.str();
}

std::string ExclusionReport::format_header() const {
  std::ostringstream out;
  out << "/* Driver functions not exercised by the traced tasks. */\n";
  out << "#pragma once\n";
  for (const auto& d : directives) out << "#define " << d << " 1\n";
  return out.str();
}

std::vector<std::string> parse_inventory(std::string_view text) {
  std::vector<std::string> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    auto line = lines[i];
    auto b = line.find_first_not_of(" \t");
    auto e = line.find_last_not_of(" \t");
    line = line.substr(b, e - b + 1);
    if (!is_identifier(line)) {
      throw Error(ErrorCode::kParse, "inventory line " + std::to_string(i + 1) +
                                         ": invalid function name '" + std::string(line) + "'");
    }
    out.emplace_back(line);
  }
  return out;
}

}  // namespace trustgate::trace
