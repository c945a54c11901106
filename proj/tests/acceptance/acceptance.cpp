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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "irsm/center/planner.hpp"
#include "irsm/core/error.hpp"
#include "irsm/framework/framework.hpp"
#include "irsm/sim/harness.hpp"
#include "reference_sf.hpp"
#include "support.hpp"

using namespace irsm;
using namespace irsm::sim;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::filesystem::path g_dir;

Scenario scenario(const std::string& name) { return load_scenario((g_dir / (name + ".yaml")).string()); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. 100 stations over all region classes and link profiles converge within
//    120 virtual seconds; the batch finishes in under 60 s of wall time.
Verdict fleet_scale() {
  const auto wall_start = std::chrono::steady_clock::now();
  Simulation sim(scenario("fleet100"));
  const Report r = sim.run();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  std::set<RegionClass> regions;
  std::set<std::string> profiles;
  for (const auto& s : sim.scenario().stations) {
    regions.insert(s.region);
    profiles.insert(s.profile);
  }
  std::size_t converged = 0;
  double worst = 0;
  for (const auto& s : sim.scenario().stations) {
    const auto it = r.convergence_times.find(s.id);
    if (it == r.convergence_times.end() || !it->second) continue;
    worst = std::max(worst, *it->second);
    if (*it->second <= 120.0) ++converged;
  }
  // The end state must also be drift free, judged by the planner itself.
  std::size_t drift_free = 0;
  const auto st = sim.center().state();
  for (const auto& [id, rec] : st.stations) {
    if (rec.reported && center::compute_actions(rec.desired, *rec.reported).empty()) ++drift_free;
  }
  const std::size_t n = sim.scenario().stations.size();
  Verdict v;
  v.pass = n == 100 && regions.size() == 4 && profiles.size() == 4 && converged == n && drift_free == n &&
           wall < 60.0;
  v.detail = std::to_string(converged) + "/" + std::to_string(n) + " converged, slowest " + fmt("%.1f", worst) +
             " s, wall " + fmt("%.2f", wall) + " s";
  return v;
}

// 2. A worker killed mid-reconciliation loses no acknowledged write, every
//    station converges and healthy workers share dispatches within one.
Verdict high_availability() {
  Simulation sim(scenario("failover"));
  const Report r = sim.run();

  // Oracle: replay the acknowledged ASSIGN and CONFIGURE directives.
  std::map<std::pair<std::string, std::string>, std::pair<Version, Activation>> assigned;
  std::map<std::pair<std::string, std::string>, std::pair<std::uint64_t, std::map<std::string, std::string>>> configs;
  std::set<std::string> killed;
  for (const auto& d : sim.scenario().timeline) {
    for (const auto& s : d.stations) {
      if (d.kind == DirectiveKind::kAssign) assigned[{s, d.package}] = {d.version, d.activation};
      if (d.kind == DirectiveKind::kConfigure) {
        auto& c = configs[{s, d.app}];
        ++c.first;
        c.second = d.entries;
      }
    }
    if (d.kind == DirectiveKind::kKillWorker) killed.insert(d.worker);
  }
  const auto st = sim.center().state();
  std::size_t lost = 0;
  for (const auto& [key, want] : assigned) {
    const auto& desired = st.stations.at(key.first).desired;
    const auto it = desired.assignments.find(key.second);
    if (it == desired.assignments.end() || it->second.version != want.first ||
        it->second.activation != want.second) {
      ++lost;
    }
  }
  for (const auto& [key, want] : configs) {
    const auto& desired = st.stations.at(key.first).desired;
    const auto it = desired.configs.find(key.second);
    if (it == desired.configs.end() || it->second.version != want.first || it->second.entries != want.second) ++lost;
  }
  std::size_t converged = 0;
  for (const auto& [id, rec] : st.stations) {
    if (rec.reported && center::compute_actions(rec.desired, *rec.reported).empty()) ++converged;
  }
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& [w, c] : r.dispatch_counts) {
    if (killed.contains(w)) continue;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  const std::uint64_t spread = hi >= lo ? hi - lo : 0;
  Verdict v;
  v.pass = !killed.empty() && sim.center().crashed_requests() >= 1 && lost == 0 && converged == st.stations.size() &&
           spread <= 1;
  v.detail = std::to_string(lost) + " lost writes, " + std::to_string(converged) + "/" +
             std::to_string(st.stations.size()) + " converged, dispatch spread " + std::to_string(spread) + ", " +
             std::to_string(sim.center().crashed_requests()) + " crashed requests";
  return v;
}

// 3. Repeated function faults climb the ladder in order up to the center;
//    a fault fixed by the first rung returns the station to RUNNING unaided.
Verdict self_recovery() {
  Simulation sim(scenario("recovery"));
  sim.run();
  const std::string fn = "incident-detect";
  const std::vector<StrategyRung> ladder{StrategyRung::kRestartFunction, StrategyRung::kRestartFramework,
                                         StrategyRung::kReinstallPackage, StrategyRung::kRebootAgent,
                                         StrategyRung::kEscalateToCenter};
  agent::Agent* climbing = sim.agent("irs-001");
  agent::Agent* healed = sim.agent("irs-002");
  if (!climbing || !healed) return {false, "agents missing"};
  const auto history = [&](agent::Agent* a) {
    const auto& h = a->rung_history();
    const auto it = h.find(fn);
    return it == h.end() ? std::vector<StrategyRung>{} : it->second;
  };
  const bool in_order = history(climbing) == ladder;
  const bool single = history(healed) == std::vector<StrategyRung>{StrategyRung::kRestartFunction};
  const auto rep = healed->reported();
  const bool running = healed->state() == agent::AgentState::kRunning && rep.health.contains(fn) &&
                       rep.health.at(fn) == FunctionHealth::kRunning;
  std::size_t operator_steps = 0;
  for (const auto& d : sim.scenario().timeline) {
    if (d.kind != DirectiveKind::kInjectFault && d.kind != DirectiveKind::kAssert && d.at > kSimEpoch) ++operator_steps;
  }
  operator_steps += sim.center().state().operator_log.size();
  std::string rungs;
  for (const auto rung : history(climbing)) rungs += (rungs.empty() ? "" : ",") + std::string(to_string(rung));
  Verdict v;
  v.pass = in_order && single && running && operator_steps == 0;
  v.detail = "irs-001 [" + rungs + "], irs-002 " + (running ? "RUNNING" : "not running") + " after " +
             std::to_string(history(healed).size()) + " rung(s), " + std::to_string(operator_steps) +
             " operator directives";
  return v;
}

// 4. A function flooding a GPRS uplink at ten times its shaped rate cannot
//    block management: heartbeats all arrive, pings return within 1 s, and
//    delivered function bytes respect rate x window + burst.
Verdict management_reachability() {
  Simulation sim(scenario("flood"));
  const Report r = sim.run();
  const auto& sc = sim.scenario();
  const std::string station = sc.stations.at(0).id;
  const PackageSpec* flood = nullptr;
  for (const auto& p : sc.packages) {
    if (p.flood) flood = &p;
  }
  if (!flood || sc.stations.at(0).profile != "GPRS") return {false, "scenario lacks a GPRS flood"};

  // Heartbeats sent by the agent against those that reached the center.
  const auto sent = sim.agent(station)->heartbeat_times().size();
  const double lost = r.metrics.at("heartbeats_lost");

  // Brute-force window check over every pair of deliveries.
  const auto& del =
      sim.fabric().stats(station, netsim::Direction::kUp, netsim::TrafficClass::Function(flood->manifest.name))
          .deliveries;
  const std::int64_t rate = static_cast<std::int64_t>(flood->manifest.quota.bandwidth_up);
  const std::int64_t burst = rate;
  std::int64_t worst = INT64_MIN;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < del.size(); ++i) {
    std::int64_t bytes = 0;
    for (std::size_t j = i; j < del.size(); ++j) {
      bytes += static_cast<std::int64_t>(del[j].second);
      const std::int64_t span_us = (del[j].first - del[i].first).count();
      // bytes <= rate * span + burst, compared in byte-microseconds.
      const std::int64_t slack = bytes * 1'000'000 - (rate * span_us + burst * 1'000'000);
      worst = std::max(worst, slack);
    }
    total += del[i].second;
  }
  // The flood must have saturated its share for the check to mean anything.
  const double saturation =
      static_cast<double>(total) / (static_cast<double>(rate) * std::chrono::duration<double>(flood->flood->duration).count());
  const double rtt = r.metrics.at("ping_rtt_max");
  const double answered = r.metrics.at("pings_answered");
  Verdict v;
  v.pass = sent >= 10 && lost == 0 && answered > 0 && rtt <= 1.0 && !del.empty() && worst <= 0 && saturation >= 0.9;
  v.detail = std::to_string(sent) + " heartbeats, " + fmt("%.0f", lost) + " lost, max ping RTT " + fmt("%.3f", rtt) +
             " s over " + fmt("%.0f", answered) + " pings, " + std::to_string(total) + " function bytes (" +
             fmt("%.2f", saturation) + " of share), worst window slack " + fmt("%.3f", worst / 1e6) + " B";
  return v;
}

// 5. Replaced hardware rebuilds the station's pre-replacement desired state
//    without operator help.
Verdict station_replacement() {
  Simulation sim(scenario("replacement"));
  const Directive* swap = nullptr;
  for (const auto& d : sim.scenario().timeline) {
    if (d.kind == DirectiveKind::kReplaceHardware) swap = &d;
  }
  if (!swap) return {false, "no REPLACE_HARDWARE directive"};
  const std::string id = swap->stations.at(0);
  sim.start();
  sim.advance_to(swap->at - SimDuration{1});
  const DesiredState before = sim.center().state().stations.at(id).desired;
  const std::string old_hw = sim.center().state().stations.at(id).identity.hardware_id;
  const Report r = sim.run();
  const auto after = sim.center().state();
  const auto rec = after.stations.at(id);
  const ReportedState reported = sim.agent(id)->reported();

  bool deep = before.assignments.size() == reported.installed.size();
  for (const auto& [name, a] : before.assignments) {
    deep = deep && reported.installed.contains(name) && reported.installed.at(name) == a.version &&
           reported.active.contains(name) == (a.activation == Activation::kActive);
  }
  for (const auto& [app, cfg] : before.configs) {
    deep = deep && reported.applied_config_versions.contains(app) &&
           reported.applied_config_versions.at(app) == cfg.version;
  }
  deep = deep && reported_matches(before, reported) && rec.desired == before;
  const bool rebound = rec.identity.hardware_id == swap->hardware && rec.identity.hardware_id != old_hw;
  const double ops = r.metrics.at("operator_directives");
  Verdict v;
  v.pass = deep && rebound && ops == 0;
  v.detail = id + " " + old_hw + " -> " + rec.identity.hardware_id + ", " + std::to_string(reported.installed.size()) +
             " packages, " + std::to_string(reported.applied_config_versions.size()) + " configs, " +
             (deep ? "state matches" : "state differs") + ", " + fmt("%.0f", ops) + " operator directives";
  return v;
}

// 6. Store-and-forward buffer against a brute-force reference.
Verdict store_and_forward() {
  std::size_t messages = 0, completed = 0, expired = 0, violations = 0;
  for (std::uint64_t seed : {101, 202, 303, 404}) {
    const auto o = testing::run_sf_property(seed, 400);
    messages += o.messages;
    completed += o.completed;
    expired += o.expired;
    violations += o.violations.size();
    for (const auto& msg : o.violations) std::fprintf(stderr, "seed %llu: %s\n", static_cast<unsigned long long>(seed), msg.c_str());
  }
  Verdict v;
  v.pass = messages >= 1000 && violations == 0 && completed > 0 && expired > 0;
  v.detail = std::to_string(messages) + " messages, " + std::to_string(completed) + " completed, " +
             std::to_string(expired) + " expired, " + std::to_string(violations) + " violations";
  return v;
}

// 7. Two persistent contenders at priorities 150 and 50 over 1000 rounds
//    must split granted capacity 0.754/0.246 within 0.002.
Verdict priority_arbitration() {
  framework::ResourceLedger ledger({0, 0, 0, 1112, 0}, 100);
  framework::FunctionFramework fw(ledger);
  for (auto [name, prio] : {std::pair{"hi", 150}, std::pair{"lo", 50}}) {
    testing::PackageDraft d{.name = name, .priority = prio};
    d.quota = ResourceQuota{0, 0, 0, 5000, 0};
    fw.register_function(testing::manifest_of(d), {});
    fw.resolve(name);
    fw.set_state(name, framework::BundleState::kActive);
  }
  std::uint64_t hi = 0, lo = 0;
  for (int round = 0; round < 1000; ++round) {
    const auto a = fw.arbitrate({{"hi", 1000}, {"lo", 1000}}, framework::Resource::kBandwidthUp, kSimEpoch);
    hi += a.at("hi");
    lo += a.at("lo");
  }
  const double share_hi = static_cast<double>(hi) / static_cast<double>(hi + lo);
  const double share_lo = 1.0 - share_hi;
  Verdict v;
  v.pass = std::abs(share_hi - 0.754) <= 0.002 && std::abs(share_lo - 0.246) <= 0.002;
  v.detail = "shares " + fmt("%.4f", share_hi) + "/" + fmt("%.4f", share_lo) + " against 0.754/0.246";
  return v;
}

// 8. Same scenario and seed, same trace digest.
Verdict determinism() {
  std::size_t runs = 0, mismatches = 0;
  for (const auto& entry : std::filesystem::directory_iterator(g_dir)) {
    if (entry.path().extension() != ".yaml") continue;
    const Scenario sc = load_scenario(entry.path().string());
    Simulation a(sc), b(sc);
    const Report ra = a.run(), rb = b.run();
    if (ra.trace_digest != rb.trace_digest || ra.to_json() != rb.to_json()) ++mismatches;
    ++runs;
  }
  Verdict v;
  v.pass = runs >= 2 && mismatches == 0;
  v.detail = std::to_string(runs) + " scenarios run twice, " + std::to_string(mismatches) + " digest mismatches";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  g_dir = argc > 1 ? argv[1] : "scenarios";
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"fleet-scale", fleet_scale},
      {"high-availability", high_availability},
      {"self-recovery", self_recovery},
      {"management-reachability", management_reachability},
      {"station-replacement", station_replacement},
      {"store-and-forward", store_and_forward},
      {"priority-arbitration", priority_arbitration},
      {"determinism", determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", n, name, v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
