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

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "trustgate/error.hpp"
#include "trustgate/trace/trace.hpp"

using namespace trustgate;
using namespace trustgate::trace;

namespace {

std::string fixture(const char* name) {
  std::ifstream in(std::string(TRUSTGATE_FIXTURES) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode code_of(auto&& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message != nullptr) *message = e.what();
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("parse examples") {
  const auto events = parse_trace("100 E i2s_open rec\n120 X i2s_open rec\n");
  REQUIRE(events.size() == 2);
  CHECK(events[0] == TraceEvent{100, Direction::kEnter, "i2s_open", "rec"});
  CHECK(events[1].direction == Direction::kExit);

  std::string msg;
  CHECK(code_of([] { parse_trace("# c\n\n100 Q foo rec\n"); }, &msg) == ErrorCode::kParse);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(code_of([] { parse_trace("100 E foo rec\n"); }, &msg) == ErrorCode::kUnbalancedTrace);
  CHECK(msg.find("foo") != std::string::npos);
  CHECK(code_of([] { parse_trace("100 X foo rec\n"); }) == ErrorCode::kUnbalancedTrace);
  CHECK(code_of([] { parse_trace("abc E foo rec\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_trace("100 E foo-bar rec\n100 X foo-bar rec\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_trace("100  E foo rec\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_trace("100 E foo rec extra\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_trace("100 E foo rec\n99 X foo rec\n"); }) == ErrorCode::kParse);
  CHECK(parse_trace("").empty());
}

TEST_CASE("callgraph examples") {
  auto graphs = build_callgraphs(parse_trace(
      "1 E a t\n2 E b t\n3 E c t\n4 X c t\n5 X b t\n6 X a t\n"));
  const auto& g = graphs.at("t");
  CHECK(g.roots == std::set<std::string>{"a"});
  CHECK(g.edges.size() == 2);
  CHECK(g.edges.at({"a", "b"}) == 1);
  CHECK(g.edges.at({"b", "c"}) == 1);
  CHECK(build_callgraphs({}).empty());

  graphs = build_callgraphs(parse_trace("1 E a t\n2 X a t\n3 E b t\n4 X b t\n"));
  CHECK(graphs.at("t").roots == std::set<std::string>{"a", "b"});
  CHECK(graphs.at("t").edges.empty());

  // Recursion produces a self-edge.
  graphs = build_callgraphs(parse_trace("1 E f t\n2 E f t\n3 X f t\n4 X f t\n"));
  CHECK(graphs.at("t").edges.at({"f", "f"}) == 1);

  std::vector<TraceEvent> crossed = {{1, Direction::kEnter, "a", "t"},
                                     {2, Direction::kEnter, "b", "t"},
                                     {3, Direction::kExit, "a", "t"},
                                     {4, Direction::kExit, "b", "t"}};
  CHECK(code_of([&] { build_callgraphs(crossed); }) == ErrorCode::kMismatchedExit);
}

TEST_CASE("minimal set examples") {
  const auto graphs = build_callgraphs(parse_trace(
      "1 E a T1\n2 E b T1\n3 X b T1\n4 X a T1\n5 E a T2\n6 E c T2\n7 X c T2\n8 X a T2\n"));
  CHECK(minimal_set(graphs, {"T1"}) == std::set<std::string>{"a", "b"});
  CHECK(minimal_set(graphs, {"T1", "T2"}) == std::set<std::string>{"a", "b", "c"});
  CHECK(code_of([&] { minimal_set(graphs, {"T9"}); }) == ErrorCode::kUnknownTask);
}

TEST_CASE("report examples") {
  auto r = emit_report({"a", "b", "c"}, {"a", "b"});
  CHECK(r.excluded == std::vector<std::string>{"c"});
  CHECK(r.directives == std::vector<std::string>{"CFG_EXCL_C"});
  CHECK(r.reduction_ratio == doctest::Approx(1.0 / 3));
  r = emit_report({"a", "b"}, {"a", "b"});
  CHECK(r.directives.empty());
  CHECK(r.reduction_ratio == 0.0);
  std::string msg;
  CHECK(code_of([] { emit_report({"a"}, {"a", "zz"}); }, &msg) == ErrorCode::kUnknownFunction);
  CHECK(msg.find("zz") != std::string::npos);
  CHECK(code_of([] { emit_report({}, {"a"}); }) == ErrorCode::kUnknownFunction);
  CHECK(directive_for("dma_irq") == "CFG_EXCL_DMA_IRQ");
}

TEST_CASE("fixture: record task") {
  const auto graphs = build_callgraphs(parse_trace(fixture("driver_calls.trace")));
  CHECK(graphs.size() == 3);
  const auto inventory = parse_inventory(fixture("driver_inventory.txt"));
  CHECK(inventory.size() == 12);
  const auto report = emit_report(inventory, minimal_set(graphs, {"record"}));
  CHECK(report.required.size() == 7);
  CHECK(report.excluded.size() == 5);
  const auto text = report.format();
  CHECK(text.find("[stats] inventory=12 required=7 excluded=5 ratio=0.4167") != std::string::npos);
  CHECK(text.rfind("[required]\ni2s_open\n", 0) == 0);
  CHECK(report.format_header().find("#define CFG_EXCL_PM_SUSPEND 1") != std::string::npos);

  const auto all = emit_report(inventory, minimal_set(graphs, {"record", "playback", "config"}));
  for (const char* t : {"record", "playback", "config"}) {
    CHECK(all.reduction_ratio <= emit_report(inventory, minimal_set(graphs, {t})).reduction_ratio);
  }
  CHECK(all.reduction_ratio == 0.0);
}

TEST_CASE("property: random traces match BFS, partition and round trip") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const auto sample = oracle::random_trace(rng);
    const auto events = parse_trace(sample.text);
    CHECK(parse_trace(render_trace(events)) == events);
    const auto graphs = build_callgraphs(events);
    std::vector<std::string> selected;
    std::set<std::string> expected;
    for (const auto& [task, truth] : sample.graphs) {
      REQUIRE(graphs.at(task).roots == truth.roots);
      CHECK(minimal_set(graphs, {task}) == oracle::bfs_reachable(truth));
      const auto before = minimal_set(graphs, selected);
      selected.push_back(task);
      const auto after = minimal_set(graphs, selected);
      CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
      const auto reach = oracle::bfs_reachable(truth);
      expected.insert(reach.begin(), reach.end());
    }
    CHECK(minimal_set(graphs, selected) == expected);
    const auto r = emit_report(sample.functions, expected);
    std::set<std::string> req(r.required.begin(), r.required.end());
    std::set<std::string> exc(r.excluded.begin(), r.excluded.end());
    CHECK(req.size() + exc.size() == sample.functions.size());
    for (const auto& f : sample.functions) CHECK(req.contains(f) != exc.contains(f));
    CHECK(r.reduction_ratio >= 0.0);
    CHECK(r.reduction_ratio <= 1.0);
  }
}

}  // TEST_SUITE
