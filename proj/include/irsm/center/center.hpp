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

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/center/balancer.hpp"
#include "irsm/center/decision.hpp"
#include "irsm/center/planner.hpp"
#include "irsm/center/store.hpp"

namespace irsm::center {

struct CenterConfig {
  std::vector<std::string> workers{"w1", "w2", "w3"};
  SimDuration heartbeat_interval = seconds(10);
  int suspect_after = 2;
  int offline_after = 6;
  DecisionTable decisions = DecisionTable::defaults();
};

struct FleetSummary {
  std::map<Liveness, std::size_t> liveness;
  std::map<RegionClass, std::size_t> regions;
  std::size_t open_critical = 0;
  std::size_t drift = 0;
  std::size_t stations = 0;

  bool operator==(const FleetSummary&) const = default;
};
nlohmann::json to_json(const FleetSummary& s);
FleetSummary summarize(const CenterState& state, SimTime now, const CenterConfig& config);

// Every call is one request: it is dispatched to a worker, runs against the
// shared store under a single writer, and is retried on another worker when
// the chosen one crashes before committing.
class ManagementCenter {
 public:
  using Clock = std::function<SimTime()>;

  explicit ManagementCenter(Clock clock, CenterConfig config = {});

  StationRecord register_station(const StationIdentity& identity);
  std::pair<std::string, Version> publish_package(std::string_view archive);
  std::uint64_t set_desired_config(const std::string& station, const std::string& app,
                                   std::map<std::string, std::string> entries);
  DesiredState assign_package(const std::string& station, const std::string& name, const Version& version,
                              Activation activation);
  ActionList actions_for(const std::string& station);
  CentralDecision ingest_fault(const FaultEvent& event);

  // Operator-ordered strategy. Throws Error(kInvalidArgument) for an unknown
  // rung and Error(kIllegalTransition) when the station is OFFLINE.
  void order_strategy(const std::string& station, const std::string& rung, const std::string& subject);

  // Agent frames. Returns frames to send back to the station.
  std::vector<nlohmann::json> handle_frame(const std::string& station, const nlohmann::json& body);
  std::vector<nlohmann::json> take_outbox(const std::string& station);

  StationRecord station(const std::string& id);
  Liveness liveness(const std::string& id);
  std::vector<std::string> station_ids();
  FleetSummary fleet_summary();
  std::vector<FaultLogEntry> faults(const std::optional<std::string>& station, std::uint64_t since);
  std::vector<OperatorEntry> operator_log();
  std::vector<Notification> notifications();
  std::string fetch_archive(const std::string& name, const Version& version);

  std::string snapshot();
  void restore(std::string_view blob);
  CenterState state();
  std::uint64_t revision();

  void worker_failover(const std::string& worker, WorkerHealth health);
  // The worker's next request dies before committing.
  void arm_worker_crash(const std::string& worker);
  std::map<std::string, std::uint64_t> dispatch_counts();
  std::map<std::string, WorkerHealth> worker_health();
  std::uint64_t crashed_requests();

  SimTime now() const { return clock_(); }
  const CenterConfig& config() const { return config_; }

 private:
  template <typename F>
  auto execute(F&& f) -> decltype(f());

  StationRecord& record(const std::string& id);
  const StationRecord& record(const std::string& id) const;
  StationRecord register_locked(const StationIdentity& identity);
  CentralDecision ingest_locked(const FaultEvent& event);
  void apply_report(StationRecord& r, const nlohmann::json& body);
  nlohmann::json actions_frame(const StationRecord& r, const ActionList& actions) const;
  void bump() { ++state_.revision; }

  Clock clock_;
  CenterConfig config_;
  std::shared_mutex store_mutex_;
  CenterState state_;
  std::mutex pool_mutex_;
  WorkerPool pool_;
  std::set<std::string> armed_crashes_;
  std::uint64_t crashed_requests_ = 0;
};

}  // namespace irsm::center
