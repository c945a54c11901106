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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/agent/checks.hpp"
#include "irsm/agent/ladder.hpp"
#include "irsm/agent/logs.hpp"
#include "irsm/agent/package_root.hpp"
#include "irsm/core/state.hpp"
#include "irsm/framework/framework.hpp"
#include "irsm/netsim/clock.hpp"

namespace irsm::agent {

enum class AgentState { kOff, kRunning, kManagementOnly, kFailed };
std::string_view to_string(AgentState s);

enum class BootPhase { kOsBoot, kFrameworkStart, kFunctionsStart, kRunning };
std::string_view to_string(BootPhase p);

struct PhaseOutcome {
  BootPhase phase;
  bool ok;
};

struct BootReport {
  std::vector<PhaseOutcome> phases;
  std::vector<FaultEvent> faults;
  AgentState state = AgentState::kOff;
  bool hello_sent = false;
};

struct BootFaults {
  bool os = false;
  bool framework = false;

  bool operator==(const BootFaults&) const = default;
};

// Scripted behaviour of a function package.
struct FunctionBehavior {
  framework::FunctionSpec spec;
  // Install attempts that see a corrupted payload; -1 means every attempt.
  int failing_installs = 0;
};

struct StrategyOutcome {
  std::optional<StrategyRung> rung;  // none for faults below ERROR
  bool recovered = false;
};

// A fault placed on the station from outside.
struct InjectedFault {
  FaultLayer layer = FaultLayer::kFunction;
  Severity severity = Severity::kError;
  std::string subject;
  // Strategy applications until the fault is gone; the N-th one succeeds.
  // 0 means it never clears on its own.
  int clears_after = 1;
  // NETWORK: link outage; DATA_COLLECTION: collector stall.
  SimDuration duration{};
  std::string detail;
};

struct AgentConfig {
  SimDuration heartbeat_interval = seconds(10);
  SimDuration backoff_base = seconds(1);
  SimDuration backoff_cap = seconds(60);
  SimDuration ladder_window = std::chrono::minutes(10);
  SimDuration data_interval = seconds(10);
  // Delay before an unrecovered fault is raised again.
  SimDuration recovery_check = seconds(1);
  framework::Capacities capacities{1000, 512ull << 20, 256ull << 20, 1'000'000, 750'000};
  std::uint32_t reserved_permille = 100;
  std::vector<LogRule> log_rules = default_log_rules();
};

struct AgentIo {
  netsim::VirtualClock* clock = nullptr;
  // Sends on the management class; throws Error(kLinkDown).
  std::function<void(const nlohmann::json&)> send;
  std::function<bool()> link_up;
  // Behaviour of a function package; may return nullptr.
  std::function<const FunctionBehavior*(const std::string&)> behavior;
  // Called when a function becomes active or stops being active.
  std::function<void(const PackageManifest&, bool active)> on_function;
  // Called when the link should be forced down or up by an injected fault.
  std::function<void(bool up)> set_link;
};

// One roadside station: boot supervision, local configuration management,
// local fault management and the heartbeat loop. All work runs as events on
// the virtual clock.
class Agent {
 public:
  Agent(StationIdentity identity, AgentConfig config, AgentIo io);
  ~Agent();
  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  BootReport boot(BootFaults faults = {});
  void power_off();

  // ACTIONS, DECISION and PING frames from the center.
  void receive(const nlohmann::json& frame);

  // Applies actions in order; each is atomic. A failed action raises a
  // FUNCTION ERROR fault and skips the rest of that package's actions.
  ReportedState reconcile(const ActionList& actions, const nlohmann::json& archives = nlohmann::json::object());

  InstallResult install_package(std::string_view archive);

  StrategyOutcome handle_fault(FaultEvent event);
  void inject(const InjectedFault& fault);

  std::vector<LocalCheckResult> local_verify();
  std::vector<FaultEvent> analyze_logs();

  ReportedState reported() const;
  AgentState state() const { return state_; }
  const StationIdentity& identity() const { return identity_; }
  const LocalLog& log() const { return log_; }
  const PackageRoot& package_root() const { return root_; }
  const framework::FunctionFramework& functions() const { return functions_; }
  const framework::ManagementFramework& management() const { return management_; }
  const framework::ResourceLedger& ledger() const { return ledger_; }

  // Every FAULT frame the agent produced, sent or still queued.
  const std::vector<FaultEvent>& emitted() const { return emitted_; }
  // Rungs applied per subject, in order.
  const std::map<std::string, std::vector<StrategyRung>>& rung_history() const { return rung_history_; }
  const std::vector<SimTime>& heartbeat_times() const { return heartbeat_times_; }
  const std::vector<SimTime>& heartbeat_attempts() const { return heartbeat_attempts_; }
  std::size_t queued_frames() const { return outbound_.size(); }

  // Test hooks for conditions the checks observe.
  void set_clock_skew(SimDuration skew) { clock_skew_ = skew; }
  void corrupt_config(const std::string& app);

 private:
  SimTime now() const { return io_.clock->now(); }
  void schedule(SimTime at, std::string kind, std::function<void()> fn);
  void log(std::string level, std::string subject, std::string message);
  void send_or_queue(nlohmann::json frame);
  bool flush_outbound();
  nlohmann::json hello_frame();
  nlohmann::json report_frame(const char* kind);
  void heartbeat_tick();
  void data_tick();
  void raise(FaultEvent event);
  void emit(const FaultEvent& event);

  bool try_clear(const std::string& subject);
  bool subject_healthy(const std::string& subject);
  void remanifest(const std::string& subject);
  bool apply_rung(StrategyRung rung, const std::string& subject);
  void restart_function(const std::string& name);
  void restart_framework();
  // Tells the host about every ACTIVE function.
  void announce_active(bool active);
  bool reinstall(const std::string& name);
  void ensure_active();
  std::vector<std::string> activation_order() const;
  bool activate(const std::string& name, std::string& why);
  void deactivate(const std::string& name);
  void forget_package(const std::string& name);
  void wipe();
  std::string config_digest(const ConfigSet& c) const;

  StationIdentity identity_;
  AgentConfig config_;
  AgentIo io_;
  std::shared_ptr<int> token_;
  std::uint64_t epoch_ = 0;

  AgentState state_ = AgentState::kOff;
  BootFaults boot_faults_;
  framework::ResourceLedger ledger_;
  framework::FunctionFramework functions_;
  framework::ManagementFramework management_;
  PackageRoot root_;
  StrategyLadder ladder_;
  LocalLog log_;

  std::map<std::string, Version> installed_;
  std::set<std::string> active_;
  std::map<std::string, ConfigSet> configs_;
  std::map<std::string, std::string> config_digests_;
  std::map<std::string, int> install_failures_used_;

  struct ActiveFault {
    FaultLayer layer;
    Severity severity;
    int failures_left;  // -1: permanent
  };
  std::map<std::string, ActiveFault> active_faults_;
  std::optional<SimTime> collector_stalled_until_;
  std::optional<SimTime> last_data_at_;
  SimDuration clock_skew_{};
  std::map<CheckName, CheckStatus> last_check_status_;
  std::map<std::string, SimTime> log_rule_fired_;

  SimDuration backoff_{};
  std::uint64_t heartbeat_seq_ = 0;
  std::vector<SimTime> heartbeat_times_;
  std::vector<SimTime> heartbeat_attempts_;
  std::vector<nlohmann::json> outbound_;
  std::vector<FaultEvent> emitted_;
  std::map<std::string, std::vector<StrategyRung>> rung_history_;
};

inline constexpr const char* kFrameworkSubject = "framework";

}  // namespace irsm::agent
