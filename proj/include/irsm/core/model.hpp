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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/core/enums.hpp"
#include "irsm/core/time.hpp"

namespace irsm {

struct StationIdentity {
  std::string logical_id;
  std::string hardware_id;
  std::string link_profile;
  RegionClass region_class = RegionClass::kRural;

  bool operator==(const StationIdentity&) const = default;
};

// Reserved app name for station-wide (non-package) configuration.
inline constexpr const char* kSystemApp = "system";

struct ConfigSet {
  std::string app_name;
  std::uint64_t version = 0;
  std::map<std::string, std::string> entries;

  bool operator==(const ConfigSet&) const = default;
};

struct FaultEvent {
  std::string station;
  FaultLayer layer = FaultLayer::kFunction;
  Severity severity = Severity::kInfo;
  std::string subject;
  SimTime occurred_at{};
  std::string detail;
  // Set when the station's strategy ladder ran out and the center must decide.
  bool ladder_exhausted = false;
  // Rung the agent applied for this event, if any.
  std::optional<StrategyRung> rung;

  bool operator==(const FaultEvent&) const = default;
};

struct V2IMessage {
  std::string msg_id;
  MessageType msg_type = MessageType::kDenmLike;
  int priority = 0;
  std::uint64_t size = 0;
  SimTime created_at{};
  SimTime expiry{};
  int redundancy = 1;
  MessageOrigin origin = MessageOrigin::kCenter;

  bool operator==(const V2IMessage&) const = default;
};

struct LocalCheckResult {
  CheckName check = CheckName::kDiskSpace;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;

  bool operator==(const LocalCheckResult&) const = default;
};

struct DecisionAction {
  DecisionKind kind = DecisionKind::kAckLogged;
  // Strategy rung for ORDER_STRATEGY, function name for QUARANTINE_FUNCTION.
  std::string argument;

  bool operator==(const DecisionAction&) const = default;
};

struct CentralDecision {
  std::vector<DecisionAction> actions;
  std::string rationale;

  bool has(DecisionKind kind) const;
  bool operator==(const CentralDecision&) const = default;
};

void to_json(nlohmann::json& j, const StationIdentity& v);
void from_json(const nlohmann::json& j, StationIdentity& v);
void to_json(nlohmann::json& j, const ConfigSet& v);
void from_json(const nlohmann::json& j, ConfigSet& v);
void to_json(nlohmann::json& j, const FaultEvent& v);
void from_json(const nlohmann::json& j, FaultEvent& v);
void to_json(nlohmann::json& j, const V2IMessage& v);
void from_json(const nlohmann::json& j, V2IMessage& v);
void to_json(nlohmann::json& j, const LocalCheckResult& v);
void from_json(const nlohmann::json& j, LocalCheckResult& v);
void to_json(nlohmann::json& j, const DecisionAction& v);
void from_json(const nlohmann::json& j, DecisionAction& v);
void to_json(nlohmann::json& j, const CentralDecision& v);
void from_json(const nlohmann::json& j, CentralDecision& v);

}  // namespace irsm
