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

#include "irsm/agent/agent.hpp"

#include <algorithm>

#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"

namespace irsm::agent {

using nlohmann::json;
using framework::BundleState;

std::string_view to_string(AgentState s) {
  switch (s) {
    case AgentState::kOff: return "OFF";
    case AgentState::kRunning: return "RUNNING";
    case AgentState::kManagementOnly: return "MANAGEMENT_ONLY";
    case AgentState::kFailed: return "FAILED";
  }
  return "?";
}

std::string_view to_string(BootPhase p) {
  switch (p) {
    case BootPhase::kOsBoot: return "OS_BOOT";
    case BootPhase::kFrameworkStart: return "FRAMEWORK_START";
    case BootPhase::kFunctionsStart: return "FUNCTIONS_START";
    case BootPhase::kRunning: return "RUNNING";
  }
  return "?";
}

Agent::Agent(StationIdentity identity, AgentConfig config, AgentIo io)
    : identity_(std::move(identity)),
      config_(std::move(config)),
      io_(std::move(io)),
      token_(std::make_shared<int>(0)),
      ledger_(config_.capacities, config_.reserved_permille),
      functions_(ledger_),
      management_(ledger_),
      root_(ledger_),
      ladder_(config_.ladder_window) {
  if (io_.clock == nullptr) throw Error(ErrorCode::kInvalidArgument, "agent needs a clock");
  management_.register_component("agent");
  management_.register_component("heartbeat");
}

Agent::~Agent() { token_.reset(); }

void Agent::schedule(SimTime at, std::string kind, std::function<void()> fn) {
  std::weak_ptr<int> alive = token_;
  io_.clock->schedule(at, identity_.logical_id + ":" + kind, [alive, fn = std::move(fn)] {
    if (!alive.expired()) fn();
  });
}

void Agent::log(std::string level, std::string subject, std::string message) {
  log_.append(LogLine{now(), std::move(level), std::move(subject), std::move(message)});
}

void Agent::send_or_queue(json frame) {
  outbound_.push_back(std::move(frame));
  if (outbound_.size() > 256) outbound_.erase(outbound_.begin());
  try {
    flush_outbound();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLinkDown) throw;
  }
}

bool Agent::flush_outbound() {
  while (!outbound_.empty()) {
    if (io_.send) io_.send(outbound_.front());
    outbound_.erase(outbound_.begin());
  }
  return true;
}

json Agent::hello_frame() {
  return json{{"kind", "HELLO"},
              {"station", identity_.logical_id},
              {"hardware_id", identity_.hardware_id},
              {"link_profile", identity_.link_profile},
              {"region_class", identity_.region_class},
              {"state", to_string(state_)},
              {"reported", reported()}};
}

json Agent::report_frame(const char* kind) {
  return json{{"kind", kind},
              {"station", identity_.logical_id},
              {"hardware_id", identity_.hardware_id},
              {"seq", ++heartbeat_seq_},
              {"state", to_string(state_)},
              {"reported", reported()},
              {"checks", local_verify()}};
}

BootReport Agent::boot(BootFaults faults) {
  ++epoch_;
  BootReport rep;
  boot_faults_ = faults;
  if (faults.framework) active_faults_[kFrameworkSubject] = {FaultLayer::kFramework, Severity::kCritical, -1};

  if (faults.os) {
    rep.phases.push_back({BootPhase::kOsBoot, false});
    state_ = AgentState::kFailed;
    log("ERROR", "os", "boot failed");
    rep.state = state_;
    return rep;
  }
  rep.phases.push_back({BootPhase::kOsBoot, true});
  management_.start();

  const bool framework_ok = !active_faults_.contains(kFrameworkSubject);
  if (functions_.status() == framework::FrameworkStatus::kRunning) {
    announce_active(false);
    functions_.fail();
  }
  if (framework_ok) {
    functions_.restart();
    for (const auto& [subject, f] : active_faults_) remanifest(subject);
    announce_active(true);
  } else {
    FaultEvent e;
    e.station = identity_.logical_id;
    e.layer = FaultLayer::kFramework;
    e.severity = Severity::kCritical;
    e.subject = kFrameworkSubject;
    e.occurred_at = now();
    e.detail = "function framework failed to start";
    rep.faults.push_back(e);
    log("ERROR", kFrameworkSubject, e.detail);
  }
  rep.phases.push_back({BootPhase::kFrameworkStart, framework_ok});

  if (framework_ok) {
    ensure_active();
    bool all = true;
    for (const auto& name : active_) {
      const auto* h = functions_.find(name);
      if (h != nullptr && h->state != BundleState::kActive && !active_faults_.contains(name)) {
        all = false;
        FaultEvent e;
        e.station = identity_.logical_id;
        e.layer = FaultLayer::kFunction;
        e.severity = Severity::kError;
        e.subject = name;
        e.occurred_at = now();
        e.detail = "function did not start";
        rep.faults.push_back(e);
      }
    }
    rep.phases.push_back({BootPhase::kFunctionsStart, all});
    rep.phases.push_back({BootPhase::kRunning, true});
    state_ = AgentState::kRunning;
  } else {
    state_ = AgentState::kManagementOnly;
  }
  log("INFO", "agent", std::string("boot complete: ") + std::string(to_string(state_)));

  send_or_queue(hello_frame());
  rep.hello_sent = true;
  backoff_ = SimDuration::zero();
  const std::uint64_t epoch = epoch_;
  schedule(now() + config_.heartbeat_interval, "heartbeat", [this, epoch] {
    if (epoch == epoch_) heartbeat_tick();
  });
  schedule(now(), "data", [this, epoch] {
    if (epoch == epoch_) data_tick();
  });
  for (const auto& f : rep.faults) raise(f);
  rep.state = state_;
  return rep;
}

void Agent::power_off() {
  ++epoch_;
  state_ = AgentState::kOff;
}

void Agent::heartbeat_tick() {
  if (state_ != AgentState::kRunning && state_ != AgentState::kManagementOnly) return;
  heartbeat_attempts_.push_back(now());
  analyze_logs();
  json frame = report_frame("HEARTBEAT");
  const std::uint64_t epoch = epoch_;
  try {
    flush_outbound();
    if (io_.send) io_.send(frame);
    heartbeat_times_.push_back(now());
    backoff_ = SimDuration::zero();
    schedule(now() + config_.heartbeat_interval, "heartbeat", [this, epoch] {
      if (epoch == epoch_) heartbeat_tick();
    });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLinkDown) throw;
    backoff_ = backoff_ == SimDuration::zero() ? config_.backoff_base : std::min(backoff_ * 2, config_.backoff_cap);
    log("WARN", "heartbeat", "link down, retry in " + std::to_string(backoff_.count() / 1000) + " ms");
    schedule(now() + backoff_, "heartbeat", [this, epoch] {
      if (epoch == epoch_) heartbeat_tick();
    });
  }
}

void Agent::data_tick() {
  if (state_ == AgentState::kRunning || state_ == AgentState::kManagementOnly) {
    if (!collector_stalled_until_ || now() >= *collector_stalled_until_) last_data_at_ = now();
  }
  const std::uint64_t epoch = epoch_;
  schedule(now() + config_.data_interval, "data", [this, epoch] {
    if (epoch == epoch_) data_tick();
  });
}

void Agent::raise(FaultEvent event) {
  schedule(now(), "fault", [this, event = std::move(event)] { handle_fault(event); });
}

void Agent::emit(const FaultEvent& event) {
  emitted_.push_back(event);
  send_or_queue(json{{"kind", "FAULT"}, {"station", identity_.logical_id}, {"event", event}});
}

StrategyOutcome Agent::handle_fault(FaultEvent event) {
  StrategyOutcome out;
  if (state_ == AgentState::kOff || state_ == AgentState::kFailed) return out;
  event.station = identity_.logical_id;
  // Link trouble is handled by the heartbeat backoff, not by the ladder.
  if (event.severity < Severity::kError || event.layer == FaultLayer::kNetwork) {
    log(event.severity >= Severity::kError ? "ERROR" : "WARN", event.subject, event.detail);
    emit(event);
    return out;
  }
  const StrategyRung rung = ladder_.next(event.subject, event.layer, now());
  event.rung = rung;
  bool recovered = false;
  if (rung == StrategyRung::kEscalateToCenter) {
    event.ladder_exhausted = true;
  } else {
    recovered = apply_rung(rung, event.subject);
  }
  rung_history_[event.subject].push_back(rung);
  log("WARN", event.subject,
      "strategy " + std::string(to_string(rung)) + (recovered ? " recovered" : " did not recover"));
  emit(event);
  if (!recovered && rung != StrategyRung::kEscalateToCenter) {
    FaultEvent again = event;
    again.rung.reset();
    again.ladder_exhausted = false;
    again.detail = "not recovered after " + std::string(to_string(rung));
    schedule(now() + config_.recovery_check, "recheck", [this, again]() mutable {
      if (subject_healthy(again.subject)) return;
      again.occurred_at = now();
      handle_fault(again);
    });
  }
  out.rung = rung;
  out.recovered = recovered;
  return out;
}

void Agent::inject(const InjectedFault& f) {
  FaultEvent e;
  e.station = identity_.logical_id;
  e.layer = f.layer;
  e.severity = f.severity;
  e.subject = f.subject;
  e.occurred_at = now();
  e.detail = f.detail.empty() ? "injected" : f.detail;
  const int left = f.clears_after <= 0 ? -1 : f.clears_after - 1;
  switch (f.layer) {
    case FaultLayer::kFunction:
    case FaultLayer::kOs:
      active_faults_[f.subject] = {f.layer, f.severity, left};
      remanifest(f.subject);
      break;
    case FaultLayer::kFramework:
      if (e.subject.empty()) e.subject = kFrameworkSubject;
      active_faults_[e.subject] = {f.layer, f.severity, left};
      remanifest(e.subject);
      break;
    case FaultLayer::kNetwork: {
      if (io_.set_link) {
        io_.set_link(false);
        schedule(now() + f.duration, "link-restore", [this] { io_.set_link(true); });
      }
      break;
    }
    case FaultLayer::kDataCollection:
      collector_stalled_until_ = now() + f.duration;
      log("WARN", f.subject.empty() ? "collector" : f.subject, "collector stalled");
      return;  // surfaces through the freshness check
  }
  log("WARN", e.subject, "fault: " + e.detail);
  raise(e);
}

bool Agent::try_clear(const std::string& subject) {
  auto it = active_faults_.find(subject);
  if (it == active_faults_.end()) return true;
  if (it->second.failures_left == 0) {
    active_faults_.erase(it);
    return true;
  }
  if (it->second.failures_left > 0) --it->second.failures_left;
  return false;
}

bool Agent::subject_healthy(const std::string& subject) {
  if (active_faults_.contains(subject)) return false;
  if (subject == kFrameworkSubject) return functions_.status() == framework::FrameworkStatus::kRunning;
  if (const auto* h = functions_.find(subject)) {
    return !active_.contains(subject) || h->state == BundleState::kActive;
  }
  if (auto check = enum_from_string<CheckName>(subject)) {
    for (const auto& r : local_verify()) {
      if (r.check == *check) return r.status == CheckStatus::kPass;
    }
  }
  return true;
}

void Agent::remanifest(const std::string& subject) {
  if (!active_faults_.contains(subject)) return;
  if (subject == kFrameworkSubject) {
    if (functions_.status() == framework::FrameworkStatus::kRunning) {
      announce_active(false);
      functions_.fail();
    }
    if (state_ == AgentState::kRunning) state_ = AgentState::kManagementOnly;
    return;
  }
  if (const auto* h = functions_.find(subject); h != nullptr && h->state != BundleState::kFaulted) {
    if (h->state == BundleState::kActive && io_.on_function) {
      if (const auto* m = root_.manifest(subject)) io_.on_function(*m, false);
    }
    functions_.set_state(subject, BundleState::kFaulted);
  }
}

bool Agent::apply_rung(StrategyRung rung, const std::string& subject) {
  const bool cleared = try_clear(subject);
  switch (rung) {
    case StrategyRung::kRestartFunction:
      restart_function(subject);
      break;
    case StrategyRung::kRestartFramework:
      restart_framework();
      break;
    case StrategyRung::kReinstallPackage:
      reinstall(subject);
      break;
    case StrategyRung::kRebootAgent:
      boot(BootFaults{false, false});
      break;
    case StrategyRung::kEscalateToCenter:
      break;
  }
  if (!cleared) remanifest(subject);
  return cleared && subject_healthy(subject);
}

void Agent::restart_function(const std::string& name) {
  const auto* h = functions_.find(name);
  if (h == nullptr || functions_.status() != framework::FrameworkStatus::kRunning) return;
  if (h->state == BundleState::kActive) {
    functions_.set_state(name, BundleState::kStopped);
    if (io_.on_function) {
      if (const auto* m = root_.manifest(name)) io_.on_function(*m, false);
    }
  }
  if (active_.contains(name)) {
    std::string why;
    if (!activate(name, why)) log("ERROR", name, "restart failed: " + why);
  }
}

void Agent::announce_active(bool active) {
  if (!io_.on_function) return;
  for (const auto& name : functions_.names()) {
    const auto* h = functions_.find(name);
    const auto* m = root_.manifest(name);
    if (h != nullptr && m != nullptr && h->state == BundleState::kActive) io_.on_function(*m, active);
  }
}

void Agent::restart_framework() {
  if (active_faults_.contains(kFrameworkSubject)) {
    remanifest(kFrameworkSubject);
    return;
  }
  if (functions_.status() == framework::FrameworkStatus::kRunning) {
    announce_active(false);
    functions_.fail();
  }
  functions_.restart();
  for (const auto& [subject, _] : active_faults_) remanifest(subject);
  announce_active(true);
  ensure_active();
  if (state_ == AgentState::kManagementOnly) state_ = AgentState::kRunning;
}

bool Agent::reinstall(const std::string& name) {
  auto it = installed_.find(name);
  if (it == installed_.end()) return false;
  auto archive = root_.cached_archive(name, it->second);
  if (!archive) return false;
  const bool was_active = active_.contains(name);
  forget_package(name);
  InstallResult r = install_package(*archive);
  if (!r.ok()) {
    log("ERROR", name, "reinstall failed: " + std::string(to_string(r.error)));
    return false;
  }
  if (was_active) {
    std::string why;
    if (!activate(name, why)) {
      log("ERROR", name, "reactivation failed: " + why);
      return false;
    }
  }
  return true;
}

std::vector<std::string> Agent::activation_order() const {
  // Depth-first over installed dependencies, names ascending.
  std::vector<std::string> order;
  std::set<std::string> done, visiting;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    if (done.contains(n) || visiting.contains(n)) return;
    visiting.insert(n);
    if (const auto* m = root_.manifest(n)) {
      std::vector<std::string> deps;
      for (const auto& d : m->depends) deps.push_back(d.name);
      std::sort(deps.begin(), deps.end());
      for (const auto& d : deps) {
        if (active_.contains(d)) visit(d);
      }
    }
    visiting.erase(n);
    done.insert(n);
    order.push_back(n);
  };
  for (const auto& n : active_) visit(n);
  return order;
}

void Agent::ensure_active() {
  if (functions_.status() != framework::FrameworkStatus::kRunning) return;
  for (const auto& name : activation_order()) {
    const auto* h = functions_.find(name);
    if (h == nullptr || h->state == BundleState::kActive || active_faults_.contains(name)) continue;
    std::string why;
    if (!activate(name, why)) log("ERROR", name, "activation failed: " + why);
  }
}

bool Agent::activate(const std::string& name, std::string& why) {
  if (!installed_.contains(name)) {
    why = "not installed";
    return false;
  }
  const PackageManifest* m = root_.manifest(name);
  if (m != nullptr && m->pkg_type == PackageType::kFunction) {
    if (functions_.status() != framework::FrameworkStatus::kRunning) {
      why = "function framework not running";
      return false;
    }
    if (active_faults_.contains(name)) {
      why = "function is faulted";
      return false;
    }
    try {
      const auto* h = functions_.find(name);
      if (h == nullptr) {
        why = "not registered";
        return false;
      }
      if (h->state != BundleState::kActive) {
        if (h->state == BundleState::kInstalled || h->state == BundleState::kFaulted) functions_.resolve(name);
        functions_.set_state(name, BundleState::kActive);
        if (io_.on_function) io_.on_function(*m, true);
      }
    } catch (const Error& e) {
      why = e.what();
      return false;
    }
  }
  active_.insert(name);
  return true;
}

void Agent::deactivate(const std::string& name) {
  if (const auto* h = functions_.find(name); h != nullptr && h->state == BundleState::kActive) {
    functions_.set_state(name, BundleState::kStopped);
    if (io_.on_function) {
      if (const auto* m = root_.manifest(name)) io_.on_function(*m, false);
    }
  }
  active_.erase(name);
}

void Agent::forget_package(const std::string& name) {
  if (const auto* h = functions_.find(name)) {
    if (h->state == BundleState::kActive && io_.on_function) {
      if (const auto* m = root_.manifest(name)) io_.on_function(*m, false);
    }
    functions_.unregister_function(name);
  }
  root_.remove(name);
  installed_.erase(name);
  active_.erase(name);
}

void Agent::wipe() {
  while (!installed_.empty()) forget_package(installed_.begin()->first);
  root_.wipe();
  configs_.clear();
  config_digests_.clear();
}

InstallResult Agent::install_package(std::string_view archive) {
  InstallResult r = root_.install_package(archive, installed_, now());
  if (!r.ok() || (r.unchanged && installed_.contains(r.manifest.name))) return r;
  const auto& m = r.manifest;
  if (const auto* h = functions_.find(m.name)) {
    if (h->state == BundleState::kActive && io_.on_function) io_.on_function(m, false);
    functions_.unregister_function(m.name);
  }
  active_.erase(m.name);
  if (m.pkg_type == PackageType::kFunction) {
    const FunctionBehavior* b = io_.behavior ? io_.behavior(m.name) : nullptr;
    functions_.register_function(m, b != nullptr ? b->spec : framework::FunctionSpec{});
    if (active_faults_.contains(m.name)) functions_.set_state(m.name, BundleState::kFaulted);
  } else if (m.pkg_type == PackageType::kManagement) {
    management_.register_component(m.name);
  }
  installed_[m.name] = m.version;
  return r;
}

std::string Agent::config_digest(const ConfigSet& c) const { return sha256_hex(json(c).dump()); }

void Agent::corrupt_config(const std::string& app) { config_digests_[app] = "corrupt"; }

ReportedState Agent::reconcile(const ActionList& actions, const json& archives) {
  std::set<std::string> failed;
  for (const auto& a : actions) {
    const std::string& subject = action_subject(a);
    if (failed.contains(subject)) {
      log("WARN", subject, "skipped " + describe(a));
      continue;
    }
    std::string why;
    bool ok = true;
    if (const auto* ins = std::get_if<action::Install>(&a)) {
      const std::string key = ins->name + "@" + ins->version.to_string();
      std::optional<std::string> bytes;
      if (archives.contains(key)) {
        bytes = base64_decode(archives.at(key).get<std::string>());
      } else {
        bytes = root_.cached_archive(ins->name, ins->version);
      }
      if (!bytes) {
        ok = false;
        why = "archive unavailable";
      } else {
        const FunctionBehavior* b = io_.behavior ? io_.behavior(ins->name) : nullptr;
        int& used = install_failures_used_[ins->name];
        if (b != nullptr && (b->failing_installs < 0 || used < b->failing_installs)) {
          ++used;
          try {
            PackageArchive pkg = read_package_archive(*bytes);
            if (pkg.payload.empty()) pkg.payload["corrupt"] = "";
            pkg.payload.begin()->second.push_back('\x5a');
            bytes = build_package_archive(pkg.manifest, pkg.payload);
          } catch (const Error&) {
            bytes->push_back('\0');
          }
        }
        InstallResult r = install_package(*bytes);
        if (!r.ok()) {
          ok = false;
          why = std::string(to_string(r.error)) + " " + r.detail;
        } else if (r.manifest.name != ins->name || r.manifest.version != ins->version) {
          forget_package(r.manifest.name);
          ok = false;
          why = "archive holds " + r.manifest.name + " " + r.manifest.version.to_string();
        }
      }
    } else if (const auto* rm = std::get_if<action::Remove>(&a)) {
      forget_package(rm->name);
    } else if (const auto* cfg = std::get_if<action::Configure>(&a)) {
      configs_[cfg->config.app_name] = cfg->config;
      config_digests_[cfg->config.app_name] = config_digest(cfg->config);
    } else if (const auto* act = std::get_if<action::Activate>(&a)) {
      ok = activate(act->name, why);
    } else if (const auto* de = std::get_if<action::Deactivate>(&a)) {
      deactivate(de->name);
    }
    if (ok) {
      log("INFO", subject, describe(a));
    } else {
      failed.insert(subject);
      log("ERROR", subject, describe(a) + " failed: " + why);
      FaultEvent e;
      e.station = identity_.logical_id;
      e.layer = FaultLayer::kFunction;
      e.severity = Severity::kError;
      e.subject = subject;
      e.occurred_at = now();
      e.detail = describe(a) + " failed: " + why;
      raise(e);
    }
  }
  return reported();
}

void Agent::receive(const json& frame) {
  if (state_ == AgentState::kOff || state_ == AgentState::kFailed) return;
  const std::string kind = frame.value("kind", std::string());
  if (kind == "ACTIONS") {
    ActionList actions = actions_from_json(frame.at("actions"));
    reconcile(actions, frame.value("archives", json::object()));
    if (!actions.empty()) send_or_queue(report_frame("REPORT"));
  } else if (kind == "DECISION") {
    const std::string decision = frame.value("decision", std::string());
    if (decision == "ORDER_STRATEGY") {
      const auto rung = parse_enum<StrategyRung>(frame.at("rung").get<std::string>());
      std::string subject = frame.value("subject", std::string());
      if (subject.empty()) subject = kFrameworkSubject;
      bool recovered = false;
      if (rung != StrategyRung::kEscalateToCenter) recovered = apply_rung(rung, subject);
      FaultEvent e;
      e.station = identity_.logical_id;
      e.layer = functions_.find(subject) != nullptr ? FaultLayer::kFunction : FaultLayer::kFramework;
      e.severity = Severity::kInfo;
      e.subject = subject;
      e.occurred_at = now();
      e.rung = rung;
      e.detail = "ordered " + std::string(to_string(rung)) + (recovered ? " recovered" : " did not recover");
      log("INFO", subject, e.detail);
      emit(e);
    } else if (decision == "REPROVISION_STATION") {
      log("WARN", "agent", "reprovisioning");
      wipe();
      send_or_queue(report_frame("REPORT"));
    }
  } else if (kind == "PING") {
    json pong{{"kind", "PONG"}, {"station", identity_.logical_id}};
    if (frame.contains("nonce")) pong["nonce"] = frame.at("nonce");
    if (frame.contains("sent_us")) pong["sent_us"] = frame.at("sent_us");
    send_or_queue(std::move(pong));
  }
}

std::vector<LocalCheckResult> Agent::local_verify() {
  StationProbe p;
  p.disk_used = root_.disk_used();
  p.disk_capacity = ledger_.capacity(framework::Resource::kDisk);
  p.clock_skew = clock_skew_;
  p.config_digest_ok = std::all_of(configs_.begin(), configs_.end(), [&](const auto& kv) {
    auto it = config_digests_.find(kv.first);
    return it != config_digests_.end() && it->second == config_digest(kv.second);
  });
  p.framework_alive = functions_.status() == framework::FrameworkStatus::kRunning;
  p.last_data_at = last_data_at_;
  p.data_interval = config_.data_interval;
  p.link_up = io_.link_up ? io_.link_up() : true;
  auto results = agent::local_verify(p, now());
  for (const auto& r : results) {
    const CheckStatus prev = last_check_status_.contains(r.check) ? last_check_status_[r.check] : CheckStatus::kPass;
    last_check_status_[r.check] = r.status;
    if (r.status != CheckStatus::kFail || prev == CheckStatus::kFail) continue;
    const FaultLayer layer = check_layer(r.check);
    const bool covered = std::any_of(active_faults_.begin(), active_faults_.end(),
                                     [&](const auto& kv) { return kv.second.layer == layer; });
    if (covered) continue;
    if (auto e = check_fault(r, identity_.logical_id, now())) raise(*e);
  }
  return results;
}

std::vector<FaultEvent> Agent::analyze_logs() {
  auto events = agent::analyze_logs(log_.all(), now(), identity_.logical_id, config_.log_rules);
  std::vector<FaultEvent> fresh;
  for (auto& e : events) {
    const std::string key = e.detail.substr(0, e.detail.find(':')) + "/" + e.subject;
    auto it = log_rule_fired_.find(key);
    const auto rule = std::find_if(config_.log_rules.begin(), config_.log_rules.end(),
                                   [&](const LogRule& r) { return e.detail.starts_with(r.name + ":"); });
    const SimDuration window = rule != config_.log_rules.end() ? rule->window : seconds(60);
    if (it != log_rule_fired_.end() && now() - it->second < window) continue;
    log_rule_fired_[key] = now();
    // Diagnostics only: reported to the center, no local strategy.
    emit(e);
    fresh.push_back(std::move(e));
  }
  return fresh;
}

ReportedState Agent::reported() const {
  ReportedState r;
  r.installed = installed_;
  r.active = active_;
  for (const auto& [app, c] : configs_) r.applied_config_versions[app] = c.version;
  for (const auto& name : functions_.names()) {
    const auto* h = functions_.find(name);
    switch (h->state) {
      case BundleState::kActive: r.health[name] = FunctionHealth::kRunning; break;
      case BundleState::kFaulted: r.health[name] = FunctionHealth::kFaulted; break;
      default: r.health[name] = FunctionHealth::kStopped; break;
    }
  }
  return r;
}

}  // namespace irsm::agent
