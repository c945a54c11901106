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

#pragma once

#include <set>
#include <string>
#include <vector>

#include "irsm/core/model.hpp"

namespace irsm::center {

enum class RuleTrigger {
  kAlways,
  // Ladder exhausted, or enough same-subject events inside the window.
  kExhaustedOrRepeated,
};

struct DecisionRule {
  std::string name;
  std::set<Severity> severities;
  std::set<FaultLayer> layers;  // empty matches every layer
  RuleTrigger trigger = RuleTrigger::kAlways;
  // Argument "$subject" is replaced by the event subject.
  std::vector<DecisionAction> actions;

  bool operator==(const DecisionRule&) const = default;
};

struct DecisionTable {
  std::vector<DecisionRule> rules;  // first match wins
  SimDuration window = std::chrono::minutes(10);
  int repeat_threshold = 3;

  static DecisionTable defaults();
  bool operator==(const DecisionTable&) const = default;
};

// Same-subject events of equal severity within (occurred_at - window,
// occurred_at] across `history` plus `event` itself.
int repeat_count(const FaultEvent& event, const std::vector<FaultEvent>& history, SimDuration window);

// Pure: the same event and history always give the same decision.
CentralDecision decide(const FaultEvent& event, const std::vector<FaultEvent>& history,
                       const DecisionTable& table = DecisionTable::defaults());

nlohmann::json decision_table_to_json(const DecisionTable& t);
DecisionTable decision_table_from_json(const nlohmann::json& j);

}  // namespace irsm::center
