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

#include "irsm/core/model.hpp"

#include <algorithm>

namespace irsm {

using nlohmann::json;

bool CentralDecision::has(DecisionKind kind) const {
  return std::any_of(actions.begin(), actions.end(),
                     [kind](const DecisionAction& a) { return a.kind == kind; });
}

void to_json(json& j, const StationIdentity& v) {
  j = json{{"logical_id", v.logical_id},
           {"hardware_id", v.hardware_id},
           {"link_profile", v.link_profile},
           {"region_class", v.region_class}};
}

void from_json(const json& j, StationIdentity& v) {
  j.at("logical_id").get_to(v.logical_id);
  j.at("hardware_id").get_to(v.hardware_id);
  j.at("link_profile").get_to(v.link_profile);
  j.at("region_class").get_to(v.region_class);
}

void to_json(json& j, const ConfigSet& v) {
  j = json{{"app_name", v.app_name}, {"version", v.version}, {"entries", v.entries}};
}

void from_json(const json& j, ConfigSet& v) {
  j.at("app_name").get_to(v.app_name);
  j.at("version").get_to(v.version);
  j.at("entries").get_to(v.entries);
}

void to_json(json& j, const FaultEvent& v) {
  j = json{{"station", v.station},
           {"layer", v.layer},
           {"severity", v.severity},
           {"subject", v.subject},
           {"occurred_at_us", micros(v.occurred_at)},
           {"detail", v.detail},
           {"ladder_exhausted", v.ladder_exhausted}};
  if (v.rung) j["rung"] = *v.rung;
}

void from_json(const json& j, FaultEvent& v) {
  j.at("station").get_to(v.station);
  j.at("layer").get_to(v.layer);
  j.at("severity").get_to(v.severity);
  j.at("subject").get_to(v.subject);
  v.occurred_at = from_micros(j.at("occurred_at_us").get<std::int64_t>());
  v.detail = j.value("detail", std::string{});
  v.ladder_exhausted = j.value("ladder_exhausted", false);
  if (auto it = j.find("rung"); it != j.end() && !it->is_null()) {
    v.rung = it->get<StrategyRung>();
  } else {
    v.rung.reset();
  }
}

void to_json(json& j, const V2IMessage& v) {
  j = json{{"msg_id", v.msg_id},
           {"msg_type", v.msg_type},
           {"priority", v.priority},
           {"size", v.size},
           {"created_at_us", micros(v.created_at)},
           {"expiry_us", micros(v.expiry)},
           {"redundancy", v.redundancy},
           {"origin", v.origin}};
}

void from_json(const json& j, V2IMessage& v) {
  j.at("msg_id").get_to(v.msg_id);
  j.at("msg_type").get_to(v.msg_type);
  j.at("priority").get_to(v.priority);
  j.at("size").get_to(v.size);
  v.created_at = from_micros(j.value("created_at_us", std::int64_t{0}));
  v.expiry = from_micros(j.at("expiry_us").get<std::int64_t>());
  j.at("redundancy").get_to(v.redundancy);
  j.at("origin").get_to(v.origin);
}

void to_json(json& j, const LocalCheckResult& v) {
  j = json{{"check", v.check}, {"status", v.status}, {"detail", v.detail}};
}

void from_json(const json& j, LocalCheckResult& v) {
  j.at("check").get_to(v.check);
  j.at("status").get_to(v.status);
  v.detail = j.value("detail", std::string{});
}

void to_json(json& j, const DecisionAction& v) {
  j = json{{"kind", v.kind}, {"argument", v.argument}};
}

void from_json(const json& j, DecisionAction& v) {
  j.at("kind").get_to(v.kind);
  v.argument = j.value("argument", std::string{});
}

void to_json(json& j, const CentralDecision& v) {
  j = json{{"actions", v.actions}, {"rationale", v.rationale}};
}

void from_json(const json& j, CentralDecision& v) {
  j.at("actions").get_to(v.actions);
  v.rationale = j.value("rationale", std::string{});
}

}  // namespace irsm
