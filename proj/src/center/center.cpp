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

#include "irsm/center/center.hpp"

#include <algorithm>

#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"
#include "irsm/core/frame.hpp"

namespace irsm::center {

using nlohmann::json;

json to_json(const FleetSummary& s) {
  json liveness = json::object();
  for (std::size_t i = 0; i < enum_count<Liveness>(); ++i) {
    auto l = static_cast<Liveness>(i);
    auto it = s.liveness.find(l);
    liveness[std::string(to_string(l))] = it == s.liveness.end() ? 0 : it->second;
  }
  json regions = json::object();
  for (std::size_t i = 0; i < enum_count<RegionClass>(); ++i) {
    auto r = static_cast<RegionClass>(i);
    auto it = s.regions.find(r);
    regions[std::string(to_string(r))] = it == s.regions.end() ? 0 : it->second;
  }
  return json{{"stations", s.stations},
              {"liveness", liveness},
              {"regions", regions},
              {"open_critical", s.open_critical},
              {"drift", s.drift}};
}

ManagementCenter::ManagementCenter(Clock clock, CenterConfig config)
    : clock_(std::move(clock)), config_(std::move(config)), pool_(config_.workers) {}

template <typename F>
auto ManagementCenter::execute(F&& f) -> decltype(f()) {
  for (;;) {
    {
      std::lock_guard lock(pool_mutex_);
      const std::string& worker = pool_.dispatch();
      if (armed_crashes_.erase(worker) > 0) {
        // Dies before committing; the caller retries on the next worker.
        pool_.set_health(worker, WorkerHealth::kDown);
        ++crashed_requests_;
        continue;
      }
    }
    return f();
  }
}

StationRecord& ManagementCenter::record(const std::string& id) {
  auto it = state_.stations.find(id);
  if (it == state_.stations.end()) throw Error(ErrorCode::kUnknownStation, id);
  return it->second;
}

const StationRecord& ManagementCenter::record(const std::string& id) const {
  auto it = state_.stations.find(id);
  if (it == state_.stations.end()) throw Error(ErrorCode::kUnknownStation, id);
  return it->second;
}

StationRecord ManagementCenter::register_locked(const StationIdentity& identity) {
  if (identity.logical_id.empty() || identity.hardware_id.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "station ids must be nonempty");
  }
  if (auto hw = state_.hardware_index.find(identity.hardware_id);
      hw != state_.hardware_index.end() && hw->second != identity.logical_id) {
    throw Error(ErrorCode::kHardwareIdInUse, identity.hardware_id + " is bound to " + hw->second);
  }
  auto it = state_.stations.find(identity.logical_id);
  if (it == state_.stations.end()) {
    StationRecord r;
    r.identity = identity;
    it = state_.stations.emplace(identity.logical_id, std::move(r)).first;
  } else {
    StationRecord& r = it->second;
    if (r.identity.hardware_id != identity.hardware_id) {
      // Replacement hardware: keep the desired state, forget what the old unit reported.
      state_.hardware_index.erase(r.identity.hardware_id);
      r.reported.reset();
      r.last_checks.clear();
    }
    r.identity = identity;
  }
  state_.hardware_index[identity.hardware_id] = identity.logical_id;
  bump();
  return it->second;
}

StationRecord ManagementCenter::register_station(const StationIdentity& identity) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    return register_locked(identity);
  });
}

std::pair<std::string, Version> ManagementCenter::publish_package(std::string_view archive) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    const std::size_t before = state_.repository.size();
    auto key = state_.repository.publish(archive);
    if (state_.repository.size() != before) bump();
    return key;
  });
}

std::uint64_t ManagementCenter::set_desired_config(const std::string& station, const std::string& app,
                                                   std::map<std::string, std::string> entries) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    if (app.empty()) throw Error(ErrorCode::kInvalidArgument, "app name must be nonempty");
    for (const auto& [k, _] : entries) {
      if (k.empty()) throw Error(ErrorCode::kInvalidArgument, "config keys must be nonempty");
    }
    StationRecord& r = record(station);
    auto& cfg = r.desired.configs[app];
    cfg.app_name = app;
    cfg.version += 1;
    cfg.entries = std::move(entries);
    bump();
    return cfg.version;
  });
}

DesiredState ManagementCenter::assign_package(const std::string& station, const std::string& name,
                                              const Version& version, Activation activation) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    StationRecord& r = record(station);
    r.desired = assign_with_closure(r.desired, state_.repository, name, version, activation);
    bump();
    return r.desired;
  });
}

ActionList ManagementCenter::actions_for(const std::string& station) {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    const StationRecord& r = record(station);
    return compute_actions(r.desired, r.reported);
  });
}

CentralDecision ManagementCenter::ingest_locked(const FaultEvent& event) {
  StationRecord& r = record(event.station);
  std::vector<FaultEvent> history;
  for (const auto& e : state_.faults) {
    if (e.event.station == event.station) history.push_back(e.event);
  }
  CentralDecision decision = decide(event, history, config_.decisions);
  const std::uint64_t seq = state_.faults.size() + 1;
  state_.faults.push_back(FaultLogEntry{seq, event, decision});

  for (const auto& a : decision.actions) {
    switch (a.kind) {
      case DecisionKind::kAckLogged:
        break;
      case DecisionKind::kOrderStrategy:
        r.outbox.push_back(json{{"kind", "DECISION"},
                                {"decision", "ORDER_STRATEGY"},
                                {"rung", a.argument},
                                {"subject", event.subject},
                                {"fault_seq", seq}});
        break;
      case DecisionKind::kQuarantineFunction:
        if (auto it = r.desired.assignments.find(a.argument); it != r.desired.assignments.end()) {
          it->second.activation = Activation::kInactive;
        }
        break;
      case DecisionKind::kReprovisionStation:
        r.reported.reset();
        r.outbox.push_back(json{{"kind", "DECISION"}, {"decision", "REPROVISION_STATION"}, {"fault_seq", seq}});
        break;
      case DecisionKind::kNotifyOperator:
        state_.notifications.push_back(Notification{seq, event.station, decision.rationale});
        break;
    }
  }
  bump();
  return decision;
}

CentralDecision ManagementCenter::ingest_fault(const FaultEvent& event) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    return ingest_locked(event);
  });
}

void ManagementCenter::order_strategy(const std::string& station, const std::string& rung,
                                      const std::string& subject) {
  execute([&] {
    std::unique_lock lock(store_mutex_);
    parse_enum<StrategyRung>(rung);
    StationRecord& r = record(station);
    if (liveness_at(r, now(), config_.heartbeat_interval, config_.suspect_after, config_.offline_after) ==
        Liveness::kOffline) {
      throw Error(ErrorCode::kIllegalTransition, station + " is OFFLINE");
    }
    state_.operator_log.push_back(
        OperatorEntry{state_.operator_log.size() + 1, now(), station, "ORDER_STRATEGY", rung});
    r.outbox.push_back(json{{"kind", "DECISION"},
                            {"decision", "ORDER_STRATEGY"},
                            {"rung", rung},
                            {"subject", subject},
                            {"operator", true}});
    bump();
  });
}

void ManagementCenter::apply_report(StationRecord& r, const json& body) {
  if (body.contains("reported")) r.reported = body.at("reported").get<ReportedState>();
  r.last_heartbeat = now();
  if (body.contains("checks")) {
    r.last_checks = body.at("checks").get<std::vector<LocalCheckResult>>();
    const bool clean = std::all_of(r.last_checks.begin(), r.last_checks.end(),
                                   [](const LocalCheckResult& c) { return c.status == CheckStatus::kPass; });
    if (clean) r.last_clean_report = now();
  }
}

json ManagementCenter::actions_frame(const StationRecord& r, const ActionList& actions) const {
  json archives = json::object();
  for (const auto& a : actions) {
    if (const auto* ins = std::get_if<action::Install>(&a)) {
      const RepositoryEntry* e = state_.repository.find(ins->name, ins->version);
      // Desired assignments only ever name published packages.
      if (e != nullptr) archives[ins->name + "@" + ins->version.to_string()] = base64_encode(e->archive);
    }
  }
  return json{{"kind", "ACTIONS"},
              {"station", r.identity.logical_id},
              {"revision", state_.revision},
              {"actions", actions_to_json(actions)},
              {"archives", archives}};
}

std::vector<json> ManagementCenter::handle_frame(const std::string& station, const json& body) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    std::vector<json> replies;
    bool send_actions = false;
    switch (frame_kind(body)) {
      case FrameKind::kHello: {
        StationIdentity id;
        id.logical_id = station;
        id.hardware_id = body.at("hardware_id").get<std::string>();
        id.link_profile = body.value("link_profile", std::string());
        id.region_class = parse_enum<RegionClass>(body.value("region_class", std::string("RURAL")));
        auto it = state_.stations.find(station);
        if (it == state_.stations.end() || it->second.identity != id) register_locked(id);
        apply_report(record(station), body);
        send_actions = true;
        break;
      }
      case FrameKind::kHeartbeat:
        apply_report(record(station), body);
        send_actions = true;
        break;
      case FrameKind::kReport:
        // Pending actions wait for the next heartbeat so a failing install cannot loop.
        apply_report(record(station), body);
        bump();
        break;
      case FrameKind::kFault: {
        FaultEvent ev = body.at("event").get<FaultEvent>();
        ev.station = station;
        ingest_locked(ev);
        record(station).last_heartbeat = now();
        break;
      }
      case FrameKind::kPong:
        record(station).last_heartbeat = now();
        break;
      default:
        throw Error(ErrorCode::kMalformedFrame, "center does not accept " + body.at("kind").get<std::string>());
    }
    StationRecord& r = record(station);
    if (send_actions) {
      bump();
      ActionList actions = compute_actions(r.desired, r.reported);
      if (!actions.empty()) replies.push_back(actions_frame(r, actions));
    }
    while (!r.outbox.empty()) {
      replies.push_back(std::move(r.outbox.front()));
      r.outbox.pop_front();
    }
    return replies;
  });
}

std::vector<json> ManagementCenter::take_outbox(const std::string& station) {
  return execute([&] {
    std::unique_lock lock(store_mutex_);
    StationRecord& r = record(station);
    std::vector<json> out(std::make_move_iterator(r.outbox.begin()), std::make_move_iterator(r.outbox.end()));
    if (!out.empty()) bump();
    r.outbox.clear();
    return out;
  });
}

StationRecord ManagementCenter::station(const std::string& id) {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    return record(id);
  });
}

Liveness ManagementCenter::liveness(const std::string& id) {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    return liveness_at(record(id), now(), config_.heartbeat_interval, config_.suspect_after, config_.offline_after);
  });
}

std::vector<std::string> ManagementCenter::station_ids() {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    std::vector<std::string> out;
    for (const auto& [id, _] : state_.stations) out.push_back(id);
    return out;
  });
}

FleetSummary summarize(const CenterState& state, SimTime t, const CenterConfig& config) {
  FleetSummary s;
  for (const auto& [id, r] : state.stations) {
    ++s.stations;
    ++s.liveness[liveness_at(r, t, config.heartbeat_interval, config.suspect_after, config.offline_after)];
    ++s.regions[r.identity.region_class];
    if (!compute_actions(r.desired, r.reported).empty()) ++s.drift;
  }
  for (const auto& e : state.faults) {
    if (e.event.severity != Severity::kCritical) continue;
    auto it = state.stations.find(e.event.station);
    if (it == state.stations.end()) continue;
    const auto& clean = it->second.last_clean_report;
    if (!clean || *clean < e.event.occurred_at) ++s.open_critical;
  }
  return s;
}

FleetSummary ManagementCenter::fleet_summary() {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    return summarize(state_, now(), config_);
  });
}

std::vector<FaultLogEntry> ManagementCenter::faults(const std::optional<std::string>& station, std::uint64_t since) {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    std::vector<FaultLogEntry> out;
    for (const auto& e : state_.faults) {
      if (e.seq <= since) continue;
      if (station && e.event.station != *station) continue;
      out.push_back(e);
    }
    return out;
  });
}

std::vector<OperatorEntry> ManagementCenter::operator_log() {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    return state_.operator_log;
  });
}

std::vector<Notification> ManagementCenter::notifications() {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    return state_.notifications;
  });
}

std::string ManagementCenter::fetch_archive(const std::string& name, const Version& version) {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    const RepositoryEntry* e = state_.repository.find(name, version);
    if (e == nullptr) throw Error(ErrorCode::kUnknownPackage, name + " " + version.to_string());
    return e->archive;
  });
}

std::string ManagementCenter::snapshot() {
  return execute([&] {
    std::shared_lock lock(store_mutex_);
    return center::snapshot(state_);
  });
}

void ManagementCenter::restore(std::string_view blob) {
  CenterState restored = center::restore(blob);
  execute([&] {
    std::unique_lock lock(store_mutex_);
    state_ = std::move(restored);
  });
}

CenterState ManagementCenter::state() {
  std::shared_lock lock(store_mutex_);
  return state_;
}

std::uint64_t ManagementCenter::revision() {
  std::shared_lock lock(store_mutex_);
  return state_.revision;
}

void ManagementCenter::worker_failover(const std::string& worker, WorkerHealth health) {
  std::lock_guard lock(pool_mutex_);
  pool_.set_health(worker, health);
  if (health == WorkerHealth::kHealthy) armed_crashes_.erase(worker);
}

void ManagementCenter::arm_worker_crash(const std::string& worker) {
  std::lock_guard lock(pool_mutex_);
  pool_.health(worker);
  armed_crashes_.insert(worker);
}

std::map<std::string, std::uint64_t> ManagementCenter::dispatch_counts() {
  std::lock_guard lock(pool_mutex_);
  return pool_.dispatch_counts();
}

std::map<std::string, WorkerHealth> ManagementCenter::worker_health() {
  std::lock_guard lock(pool_mutex_);
  std::map<std::string, WorkerHealth> out;
  for (const auto& w : pool_.workers()) out[w] = pool_.health(w);
  return out;
}

std::uint64_t ManagementCenter::crashed_requests() {
  std::lock_guard lock(pool_mutex_);
  return crashed_requests_;
}

}  // namespace irsm::center
