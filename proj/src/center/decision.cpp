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

#include "irsm/center/decision.hpp"

#include "irsm/core/error.hpp"

namespace irsm::center {

namespace {

DecisionRule rule(std::string name, std::set<Severity> sev, std::set<FaultLayer> layers, RuleTrigger trigger,
                  std::vector<DecisionAction> actions) {
  return DecisionRule{std::move(name), std::move(sev), std::move(layers), trigger, std::move(actions)};
}

}  // namespace

DecisionTable DecisionTable::defaults() {
  using S = Severity;
  using L = FaultLayer;
  using K = DecisionKind;
  DecisionTable t;
  t.rules = {
      rule("critical-platform", {S::kCritical}, {L::kOs, L::kNetwork}, RuleTrigger::kAlways,
           {{K::kReprovisionStation, ""}, {K::kNotifyOperator, ""}}),
      rule("critical-runtime", {S::kCritical}, {L::kFunction, L::kFramework, L::kDataCollection},
           RuleTrigger::kAlways, {{K::kOrderStrategy, "RESTART_FRAMEWORK"}}),
      rule("function-persistent-error", {S::kError}, {L::kFunction}, RuleTrigger::kExhaustedOrRepeated,
           {{K::kQuarantineFunction, "$subject"}}),
      rule("platform-persistent-error", {S::kError}, {}, RuleTrigger::kExhaustedOrRepeated,
           {{K::kNotifyOperator, ""}}),
      rule("log", {S::kInfo, S::kWarning, S::kError}, {}, RuleTrigger::kAlways, {{K::kAckLogged, ""}}),
  };
  return t;
}

int repeat_count(const FaultEvent& event, const std::vector<FaultEvent>& history, SimDuration window) {
  int n = 1;
  for (const auto& h : history) {
    if (h.subject != event.subject || h.severity != event.severity) continue;
    if (h.occurred_at > event.occurred_at || h.occurred_at <= event.occurred_at - window) continue;
    ++n;
  }
  return n;
}

CentralDecision decide(const FaultEvent& event, const std::vector<FaultEvent>& history, const DecisionTable& table) {
  for (const auto& r : table.rules) {
    if (!r.severities.contains(event.severity)) continue;
    if (!r.layers.empty() && !r.layers.contains(event.layer)) continue;
    std::string why = r.name;
    if (r.trigger == RuleTrigger::kExhaustedOrRepeated) {
      const int repeats = repeat_count(event, history, table.window);
      if (!event.ladder_exhausted && repeats < table.repeat_threshold) continue;
      why += event.ladder_exhausted ? ": ladder exhausted" : ": " + std::to_string(repeats) + " repeats";
    }
    CentralDecision d;
    d.rationale = why;
    for (auto a : r.actions) {
      if (a.argument == "$subject") a.argument = event.subject;
      d.actions.push_back(std::move(a));
    }
    return d;
  }
  return CentralDecision{{{DecisionKind::kAckLogged, ""}}, "default"};
}

nlohmann::json decision_table_to_json(const DecisionTable& t) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : t.rules) {
    rules.push_back({{"name", r.name},
                     {"severities", r.severities},
                     {"layers", r.layers},
                     {"trigger", r.trigger == RuleTrigger::kAlways ? "ALWAYS" : "EXHAUSTED_OR_REPEATED"},
                     {"actions", r.actions}});
  }
  return {{"rules", rules},
          {"window_s", std::chrono::duration_cast<std::chrono::seconds>(t.window).count()},
          {"repeat_threshold", t.repeat_threshold}};
}

DecisionTable decision_table_from_json(const nlohmann::json& j) {
  try {
    DecisionTable t;
    t.rules.clear();
    for (const auto& r : j.at("rules")) {
      DecisionRule out;
      out.name = r.at("name").get<std::string>();
      out.severities = r.at("severities").get<std::set<Severity>>();
      out.layers = r.value("layers", nlohmann::json::array()).get<std::set<FaultLayer>>();
      const auto trig = r.value("trigger", std::string("ALWAYS"));
      if (trig == "ALWAYS") {
        out.trigger = RuleTrigger::kAlways;
      } else if (trig == "EXHAUSTED_OR_REPEATED") {
        out.trigger = RuleTrigger::kExhaustedOrRepeated;
      } else {
        throw Error(ErrorCode::kInvalidArgument, "unknown trigger " + trig);
      }
      out.actions = r.at("actions").get<std::vector<DecisionAction>>();
      t.rules.push_back(std::move(out));
    }
    t.window = seconds(j.value("window_s", 600));
    t.repeat_threshold = j.value("repeat_threshold", 3);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("decision table: ") + e.what());
  }
}

}  // namespace irsm::center
