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

#include <random>

#include "doctest.h"
#include "irsm/agent/agent.hpp"
#include "irsm/center/planner.hpp"
#include "irsm/center/repository.hpp"
#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"
#include "support.hpp"

using namespace irsm;
using namespace irsm::agent;
using nlohmann::json;

namespace {

struct Rig {
  netsim::VirtualClock clock;
  bool link = true;
  std::vector<json> sent;
  std::map<std::string, FunctionBehavior> behaviors;
  std::vector<std::pair<std::string, bool>> function_events;
  std::unique_ptr<Agent> agent;

  explicit Rig(AgentConfig cfg = {}) {
    AgentIo io;
    io.clock = &clock;
    io.send = [this](const json& f) {
      if (!link) throw Error(ErrorCode::kLinkDown, "down");
      sent.push_back(f);
    };
    io.link_up = [this] { return link; };
    io.behavior = [this](const std::string& n) -> const FunctionBehavior* {
      auto it = behaviors.find(n);
      return it == behaviors.end() ? nullptr : &it->second;
    };
    io.on_function = [this](const PackageManifest& m, bool active) { function_events.emplace_back(m.name, active); };
    io.set_link = [this](bool up) { link = up; };
    agent = std::make_unique<Agent>(StationIdentity{"irs-001", "hw-1", "XDSL", RegionClass::kUrban}, cfg, io);
  }

  std::size_t count(const std::string& kind) const {
    return static_cast<std::size_t>(
        std::count_if(sent.begin(), sent.end(), [&](const json& f) { return f["kind"] == kind; }));
  }
};

std::string b64_archive(const testing::PackageDraft& d) { return base64_encode(testing::archive_of(d)); }

json archives_of(const std::vector<testing::PackageDraft>& drafts) {
  json out = json::object();
  for (const auto& d : drafts) out[d.name + "@" + d.version] = b64_archive(d);
  return out;
}

const testing::PackageDraft kA{.name = "A", .depends = {{"B", "1.0.0"}}};
const testing::PackageDraft kB{.name = "B", .version = "1.2.0"};

}  // namespace

TEST_CASE("clean boot") {
  Rig r;
  const auto rep = r.agent->boot();
  CHECK(rep.state == AgentState::kRunning);
  CHECK(rep.faults.empty());
  CHECK(rep.hello_sent);
  REQUIRE(rep.phases.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rep.phases[i].phase == BootPhase(i));
    CHECK(rep.phases[i].ok);
  }
  CHECK(r.count("HELLO") == 1);
}

TEST_CASE("framework boot fault leaves management reachable") {
  Rig r;
  const auto rep = r.agent->boot(BootFaults{false, true});
  CHECK(rep.state == AgentState::kManagementOnly);
  REQUIRE(rep.faults.size() == 1);
  CHECK(rep.faults[0].layer == FaultLayer::kFramework);
  CHECK(rep.faults[0].severity == Severity::kCritical);
  CHECK(r.count("HELLO") == 1);
  CHECK(management_framework_alive(r.agent->management()));
  r.clock.advance(at(seconds(60)));
  // The ladder reboots the agent early on; heartbeats keep their cadence afterwards.
  const auto& hb = r.agent->heartbeat_times();
  REQUIRE(hb.size() >= 5);
  for (std::size_t i = 1; i < hb.size(); ++i) CHECK(hb[i] - hb[i - 1] == seconds(10));
  CHECK(r.agent->state() == AgentState::kManagementOnly);
  CHECK(r.agent->emitted().back().rung == StrategyRung::kEscalateToCenter);
}

TEST_CASE("os boot fault sends nothing") {
  Rig r;
  const auto rep = r.agent->boot(BootFaults{true, false});
  CHECK(rep.state == AgentState::kFailed);
  CHECK_FALSE(rep.hello_sent);
  REQUIRE(rep.phases.size() == 1);
  CHECK_FALSE(rep.phases[0].ok);
  r.clock.advance(at(seconds(60)));
  CHECK(r.sent.empty());
}

TEST_CASE("heartbeats follow the interval") {
  Rig r;
  r.agent->boot();
  r.clock.advance(at(seconds(60)));
  // One every 10 s after boot, the first at 10 s.
  std::vector<SimTime> expect;
  for (int t = 10; t <= 60; t += 10) expect.push_back(at(seconds(t)));
  CHECK(r.agent->heartbeat_times() == expect);
  CHECK(r.count("HEARTBEAT") == 6);
  const auto& hb = r.sent.back();
  CHECK(hb["seq"] == 6);
  CHECK(hb["checks"].size() == 6);
}

TEST_CASE("heartbeat retries back off exponentially during an outage") {
  Rig r;
  r.agent->boot();
  r.clock.schedule(at(millis(9500)), "down", [&] { r.link = false; });
  r.clock.schedule(at(millis(34500)), "up", [&] { r.link = true; });
  r.clock.advance(at(seconds(60)));
  const auto& attempts = r.agent->heartbeat_attempts();
  // Oracle: doubling from 1 s, starting after the failed attempt at 10 s.
  std::vector<SimTime> expect{at(seconds(10))};
  SimDuration step = seconds(1);
  while (expect.back() < at(millis(34500))) {
    expect.push_back(expect.back() + step);
    step *= 2;
  }
  REQUIRE(attempts.size() >= expect.size());
  CHECK(std::vector<SimTime>(attempts.begin(), attempts.begin() + static_cast<std::ptrdiff_t>(expect.size())) ==
        expect);
  CHECK(expect.back() == at(seconds(41)));
  CHECK(r.agent->heartbeat_times() == std::vector<SimTime>{at(seconds(41)), at(seconds(51))});
}

TEST_CASE("reconcile applies actions in order") {
  Rig r;
  r.agent->boot();
  const ActionList actions{action::Install{"B", {1, 2, 0}}, action::Install{"A", {1, 0, 0}},
                           action::Configure{ConfigSet{"A", 3, {{"k", "v"}}}}, action::Activate{"B"},
                           action::Activate{"A"}};
  const auto rep = r.agent->reconcile(actions, archives_of({kA, kB}));
  DesiredState d;
  d.assignments["A"] = Assignment{{1, 0, 0}, Activation::kActive, {{"B", {1, 0, 0}}}};
  d.assignments["B"] = Assignment{{1, 2, 0}, Activation::kActive, {}};
  d.configs["A"] = ConfigSet{"A", 3, {{"k", "v"}}};
  CHECK(reported_matches(d, rep));
  CHECK(rep.health.at("A") == FunctionHealth::kRunning);
  CHECK(r.agent->reconcile({}, json::object()) == rep);
  CHECK(r.agent->package_root().verify());
  CHECK(r.agent->package_root().files().contains("A/1.0.0/bin/A"));
}

TEST_CASE("digest mismatch fails only that package") {
  Rig r;
  r.behaviors["A"].failing_installs = 1;
  r.agent->boot();
  const testing::PackageDraft c{.name = "C"};
  const ActionList actions{action::Install{"A", {1, 0, 0}}, action::Install{"C", {1, 0, 0}}, action::Activate{"A"},
                           action::Activate{"C"}};
  auto b = testing::PackageDraft{.name = "A"};
  const auto rep = r.agent->reconcile(actions, archives_of({b, c}));
  CHECK_FALSE(rep.installed.contains("A"));
  CHECK_FALSE(rep.active.contains("A"));
  CHECK(rep.active.contains("C"));
  r.clock.advance(at(seconds(1)));
  const auto& em = r.agent->emitted();
  REQUIRE_FALSE(em.empty());
  CHECK(em[0].layer == FaultLayer::kFunction);
  CHECK(em[0].severity == Severity::kError);
  CHECK(em[0].subject == "A");
  CHECK(em[0].detail.find("DigestMismatch") != std::string::npos);
  CHECK(r.agent->package_root().verify());

  // The next round succeeds.
  CHECK(r.agent->reconcile(actions, archives_of({b, c})).active.contains("A"));
}

TEST_CASE("install_package checks") {
  Rig r;
  r.agent->boot();
  auto res = r.agent->install_package(testing::archive_of(kA));
  CHECK(res.error == InstallError::kMissingDependency);
  CHECK(res.detail.find("B") != std::string::npos);
  CHECK(r.agent->install_package(testing::archive_of(kB)).ok());
  CHECK(r.agent->install_package(testing::archive_of(kA)).ok());
  res = r.agent->install_package(testing::archive_of(kA));
  CHECK(res.ok());
  CHECK(res.unchanged);
  CHECK(r.agent->install_package("junk").error == InstallError::kMalformedArchive);

  testing::PackageDraft big{.name = "big"};
  big.quota.disk = 4;
  CHECK(r.agent->install_package(testing::archive_of(big)).error == InstallError::kDiskQuotaExceeded);
  CHECK_FALSE(r.agent->package_root().contains("big"));

  const auto m = testing::manifest_of({.name = "liar"});
  CHECK(r.agent->install_package(build_package_archive(m, {{"bin/liar", "other"}})).error ==
        InstallError::kDigestMismatch);
}

TEST_CASE("strategy ladder state machine") {
  StrategyLadder ladder(std::chrono::minutes(10));
  std::vector<StrategyRung> got;
  for (int i = 0; i < 6; ++i) got.push_back(ladder.next("f", FaultLayer::kFunction, at(seconds(30 * i))));
  CHECK(got == std::vector<StrategyRung>{StrategyRung::kRestartFunction, StrategyRung::kRestartFramework,
                                         StrategyRung::kReinstallPackage, StrategyRung::kRebootAgent,
                                         StrategyRung::kEscalateToCenter, StrategyRung::kEscalateToCenter});
  CHECK(ladder.next("g", FaultLayer::kFunction, at(seconds(200))) == StrategyRung::kRestartFunction);
  // A quiet window starts over.
  CHECK(ladder.next("f", FaultLayer::kFunction, at(seconds(150 + 601))) == StrategyRung::kRestartFunction);
  CHECK(ladder.peek("x", FaultLayer::kOs, kSimEpoch) == StrategyRung::kRebootAgent);
  CHECK(minimum_rung(FaultLayer::kFramework) == StrategyRung::kRestartFramework);
}

TEST_CASE("agent climbs the ladder and escalates") {
  Rig r;
  r.agent->boot();
  r.agent->reconcile({action::Install{"f", {1, 0, 0}}, action::Activate{"f"}},
                     archives_of({testing::PackageDraft{.name = "f"}}));
  for (int i = 0; i < 5; ++i) {
    r.clock.advance(at(seconds(30 * (i + 1))));
    FaultEvent e;
    e.layer = FaultLayer::kFunction;
    e.severity = Severity::kError;
    e.subject = "f";
    e.occurred_at = r.clock.now();
    const auto out = r.agent->handle_fault(e);
    REQUIRE(out.rung);
    CHECK(*out.rung == StrategyRung(i));
    CHECK(out.recovered == (i < 4));
  }
  const auto& hist = r.agent->rung_history().at("f");
  CHECK(hist.size() == 5);
  CHECK(std::is_sorted(hist.begin(), hist.end()));
  CHECK(r.agent->emitted().back().ladder_exhausted);
  CHECK(r.agent->reported().active.contains("f"));

  FaultEvent warn;
  warn.layer = FaultLayer::kFunction;
  warn.severity = Severity::kWarning;
  warn.subject = "f";
  CHECK_FALSE(r.agent->handle_fault(warn).rung);
}

TEST_CASE("injected function fault that clears after one rung") {
  Rig r;
  r.agent->boot();
  r.agent->reconcile({action::Install{"f", {1, 0, 0}}, action::Activate{"f"}},
                     archives_of({testing::PackageDraft{.name = "f"}}));
  r.clock.advance(at(seconds(5)));
  r.agent->inject(InjectedFault{FaultLayer::kFunction, Severity::kError, "f", 1, {}, ""});
  CHECK(r.agent->reported().health.at("f") == FunctionHealth::kFaulted);
  r.clock.advance(at(seconds(20)));
  CHECK(r.agent->reported().health.at("f") == FunctionHealth::kRunning);
  CHECK(r.agent->rung_history().at("f") == std::vector<StrategyRung>{StrategyRung::kRestartFunction});
  CHECK(std::count(r.function_events.begin(), r.function_events.end(), std::pair<std::string, bool>{"f", true}) == 2);
}

TEST_CASE("ordered strategy and reprovisioning") {
  Rig r;
  r.agent->boot();
  r.agent->reconcile({action::Install{"f", {1, 0, 0}}, action::Activate{"f"}},
                     archives_of({testing::PackageDraft{.name = "f"}}));
  r.agent->receive(json{{"kind", "DECISION"}, {"decision", "ORDER_STRATEGY"}, {"rung", "RESTART_FRAMEWORK"}});
  CHECK(r.agent->emitted().back().rung == StrategyRung::kRestartFramework);
  CHECK(r.agent->reported().active.contains("f"));
  r.agent->receive(json{{"kind", "PING"}, {"nonce", 7}, {"sent_us", 123}});
  CHECK(r.sent.back()["kind"] == "PONG");
  CHECK(r.sent.back()["nonce"] == 7);
  r.agent->receive(json{{"kind", "DECISION"}, {"decision", "REPROVISION_STATION"}});
  CHECK(r.agent->reported().installed.empty());
  CHECK(r.sent.back()["kind"] == "REPORT");
}

TEST_CASE("reconciliation converges despite transient install failures") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Rig r;
    center::PackageRepository repo;
    std::vector<testing::PackageDraft> drafts;
    for (int p = 0; p < 5; ++p) {
      testing::PackageDraft d{.name = std::string(1, static_cast<char>('a' + p))};
      for (int q = 0; q < p; ++q) {
        if (rng() % 3 == 0) d.depends.push_back({std::string(1, static_cast<char>('a' + q)), "1.0.0"});
      }
      drafts.push_back(d);
      repo.publish(testing::archive_of(d));
    }
    int failures = 0;
    for (const auto& d : drafts) {
      r.behaviors[d.name].failing_installs = static_cast<int>(rng() % 3);
      failures += r.behaviors[d.name].failing_installs;
    }
    r.agent->boot();
    DesiredState desired;
    for (const auto& d : drafts) {
      if (rng() % 2) {
        desired = center::assign_with_closure(desired, repo, d.name, {1, 0, 0},
                                              rng() % 3 ? Activation::kActive : Activation::kInactive);
      }
    }
    desired.configs["a"] = ConfigSet{"a", 2, {{"x", "y"}}};
    const json archives = archives_of(drafts);
    const std::size_t first = center::compute_actions(desired, r.agent->reported()).size();
    std::size_t rounds = 0;
    while (!center::compute_actions(desired, r.agent->reported()).empty() && rounds < 100) {
      r.agent->reconcile(center::compute_actions(desired, r.agent->reported()), archives);
      ++rounds;
    }
    CHECK(center::compute_actions(desired, r.agent->reported()).empty());
    CHECK(rounds <= first + static_cast<std::size_t>(failures) + 1);
    CHECK(r.agent->package_root().verify());
  }
}
