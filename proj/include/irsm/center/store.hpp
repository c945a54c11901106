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
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/center/repository.hpp"
#include "irsm/core/model.hpp"
#include "irsm/core/state.hpp"

namespace irsm::center {

struct StationRecord {
  StationIdentity identity;
  DesiredState desired;
  std::optional<ReportedState> reported;
  std::optional<SimTime> last_heartbeat;
  // Last heartbeat whose checks all passed.
  std::optional<SimTime> last_clean_report;
  std::vector<LocalCheckResult> last_checks;
  // Frames waiting for the station's next contact.
  std::deque<nlohmann::json> outbox;

  bool operator==(const StationRecord&) const = default;
};

struct FaultLogEntry {
  std::uint64_t seq = 0;
  FaultEvent event;
  CentralDecision decision;

  bool operator==(const FaultLogEntry&) const = default;
};

// Something a human asked for through the management API.
struct OperatorEntry {
  std::uint64_t seq = 0;
  SimTime at{};
  std::string station;
  std::string directive;
  std::string argument;

  bool operator==(const OperatorEntry&) const = default;
};

struct Notification {
  std::uint64_t fault_seq = 0;
  std::string station;
  std::string rationale;

  bool operator==(const Notification&) const = default;
};

// Everything the center knows. Workers keep no state of their own.
struct CenterState {
  std::uint64_t revision = 0;
  std::map<std::string, StationRecord> stations;
  std::map<std::string, std::string> hardware_index;  // hardware_id -> logical_id
  PackageRepository repository;
  std::vector<FaultLogEntry> faults;
  std::vector<OperatorEntry> operator_log;
  std::vector<Notification> notifications;

  bool operator==(const CenterState&) const = default;
};

Liveness liveness_at(const StationRecord& r, SimTime now, SimDuration heartbeat_interval, int suspect_after = 2,
                     int offline_after = 6);

nlohmann::json to_json(const CenterState& s);
CenterState center_state_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const StationRecord& v);
void from_json(const nlohmann::json& j, StationRecord& v);
void to_json(nlohmann::json& j, const FaultLogEntry& v);
void from_json(const nlohmann::json& j, FaultLogEntry& v);
void to_json(nlohmann::json& j, const OperatorEntry& v);
void from_json(const nlohmann::json& j, OperatorEntry& v);

// JSON document, newline, SHA-256 hex of the document, newline.
std::string snapshot(const CenterState& s);
// Throws Error(kCorruptSnapshot) on a digest mismatch, truncation or bad JSON.
CenterState restore(std::string_view blob);

}  // namespace irsm::center
