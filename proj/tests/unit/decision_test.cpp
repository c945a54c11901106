// Copyright 2026 The IRSM Authors.
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

#include "doctest.h"
#include "irsm/center/decision.hpp"

using namespace irsm;
using namespace irsm::center;

namespace {

FaultEvent event(FaultLayer layer, Severity sev, std::string subject = "f", int at_s = 0, bool exhausted = false) {
  FaultEvent e;
  e.station = "irs-001";
  e.layer = layer;
  e.severity = sev;
  e.subject = std::move(subject);
  e.occurred_at = at(seconds(at_s));
  e.ladder_exhausted = exhausted;
  return e;
}

std::vector<DecisionKind> kinds(const CentralDecision& d) {
  std::vector<DecisionKind> out;
  for (const auto& a : d.actions) out.push_back(a.kind);
  return out;
}

}  // namespace

TEST_CASE("info and warning are only logged") {
  for (int l = 0; l < 5; ++l) {
    for (auto sev : {Severity::kInfo, Severity::kWarning}) {
      CHECK(kinds(decide(event(FaultLayer(l), sev), {})) == std::vector{DecisionKind::kAckLogged});
    }
  }
}

TEST_CASE("third function error with an exhausted ladder quarantines the function") {
  std::vector<FaultEvent> history{event(FaultLayer::kFunction, Severity::kError, "f", 0),
                                  event(FaultLayer::kFunction, Severity::kError, "f", 30)};
  const auto d = decide(event(FaultLayer::kFunction, Severity::kError, "f", 60, true), history);
  REQUIRE(d.actions.size() == 1);
  CHECK(d.actions[0] == DecisionAction{DecisionKind::kQuarantineFunction, "f"});
}

TEST_CASE("repeats inside the window quarantine even before exhaustion") {
  std::vector<FaultEvent> history{event(FaultLayer::kFunction, Severity::kError, "f", 0),
                                  event(FaultLayer::kFunction, Severity::kError, "g", 10)};
  CHECK(decide(event(FaultLayer::kFunction, Severity::kError, "f", 20), history).has(DecisionKind::kAckLogged));
  history.push_back(event(FaultLayer::kFunction, Severity::kError, "f", 15));
  CHECK(decide(event(FaultLayer::kFunction, Severity::kError, "f", 20), history)
            .has(DecisionKind::kQuarantineFunction));
  // Outside the ten-minute window the old events do not count.
  CHECK(decide(event(FaultLayer::kFunction, Severity::kError, "f", 615), history).has(DecisionKind::kAckLogged));
  CHECK(repeat_count(event(FaultLayer::kFunction, Severity::kError, "f", 600), history, std::chrono::minutes(10)) == 2);
}

TEST_CASE("critical faults") {
  CHECK(kinds(decide(event(FaultLayer::kOs, Severity::kCritical), {})) ==
        std::vector{DecisionKind::kReprovisionStation, DecisionKind::kNotifyOperator});
  CHECK(kinds(decide(event(FaultLayer::kNetwork, Severity::kCritical), {})) ==
        std::vector{DecisionKind::kReprovisionStation, DecisionKind::kNotifyOperator});
  for (auto l : {FaultLayer::kFunction, FaultLayer::kFramework, FaultLayer::kDataCollection}) {
    const auto d = decide(event(l, Severity::kCritical), {});
    REQUIRE(d.actions.size() == 1);
    CHECK(d.actions[0] == DecisionAction{DecisionKind::kOrderStrategy, "RESTART_FRAMEWORK"});
  }
}

TEST_CASE("persistent platform errors notify the operator") {
  const auto d = decide(event(FaultLayer::kFramework, Severity::kError, "framework", 0, true), {});
  CHECK(kinds(d) == std::vector{DecisionKind::kNotifyOperator});
  CHECK(kinds(decide(event(FaultLayer::kOs, Severity::kError, "disk"), {})) == std::vector{DecisionKind::kAckLogged});
}

TEST_CASE("decisions replay from the event stream and the table roundtrips") {
  std::vector<FaultEvent> stream;
  std::vector<CentralDecision> live;
  for (int i = 0; i < 40; ++i) {
    const auto e = event(FaultLayer(i % 5), Severity(i % 4), i % 3 ? "f" : "g", i * 20, i % 7 == 0);
    live.push_back(decide(e, stream));
    stream.push_back(e);
  }
  std::vector<FaultEvent> replay;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    CHECK(decide(stream[i], replay) == live[i]);
    replay.push_back(stream[i]);
  }
  const auto table = DecisionTable::defaults();
  CHECK(decision_table_from_json(decision_table_to_json(table)) == table);
}
