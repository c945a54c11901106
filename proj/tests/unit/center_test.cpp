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

#include <thread>

#include "doctest.h"
#include "irsm/center/center.hpp"
#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"
#include "support.hpp"

using namespace irsm;
using namespace irsm::center;
using nlohmann::json;

namespace {

struct Rig {
  SimTime now{};
  ManagementCenter center{[this] { return now; }};
};

StationIdentity ident(std::string hw, std::string id, std::string profile = "GPRS",
                      RegionClass rc = RegionClass::kRural) {
  return StationIdentity{std::move(id), std::move(hw), std::move(profile), rc};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("registration and hardware replacement") {
  Rig r;
  const auto rec = r.center.register_station(ident("hw-1", "irs-042"));
  CHECK(rec.desired == DesiredState{});
  CHECK_FALSE(rec.reported);

  r.center.publish_package(testing::archive_of({.name = "pkgA"}));
  r.center.assign_package("irs-042", "pkgA", {1, 0, 0}, Activation::kActive);
  r.center.handle_frame("irs-042", json{{"kind", "HEARTBEAT"}, {"reported", ReportedState{}}});
  CHECK(r.center.station("irs-042").reported);

  const auto before = r.center.station("irs-042").desired;
  const auto rebound = r.center.register_station(ident("hw-2", "irs-042"));
  CHECK(rebound.identity.hardware_id == "hw-2");
  CHECK(rebound.desired == before);
  CHECK_FALSE(rebound.reported);

  CHECK(code_of([&] { r.center.register_station(ident("hw-2", "irs-999")); }) == ErrorCode::kHardwareIdInUse);
  // The old hardware is free again.
  CHECK(r.center.register_station(ident("hw-1", "irs-999")).identity.logical_id == "irs-999");
}

TEST_CASE("config versions increase and replace entries") {
  Rig r;
  r.center.register_station(ident("hw-1", "irs-001"));
  CHECK(r.center.set_desired_config("irs-001", "lsa-bridge", {{"cycle", "90"}, {"mode", "a"}}) == 1);
  CHECK(r.center.set_desired_config("irs-001", "lsa-bridge", {{"cycle", "60"}}) == 2);
  const auto cfg = r.center.station("irs-001").desired.configs.at("lsa-bridge");
  CHECK(cfg.entries == std::map<std::string, std::string>{{"cycle", "60"}});
  CHECK(code_of([&] { r.center.set_desired_config("irs-777", "x", {}); }) == ErrorCode::kUnknownStation);
}

TEST_CASE("assign through the center") {
  Rig r;
  r.center.register_station(ident("hw-1", "irs-001"));
  r.center.publish_package(testing::archive_of({.name = "B", .version = "1.2.0"}));
  r.center.publish_package(testing::archive_of({.name = "A", .depends = {{"B", "1.0.0"}}}));
  const auto d = r.center.assign_package("irs-001", "A", {1, 0, 0}, Activation::kActive);
  CHECK(d.assignments.at("B").version == Version{1, 2, 0});
  CHECK(code_of([&] { r.center.assign_package("irs-001", "Q", {1, 0, 0}, Activation::kActive); }) ==
        ErrorCode::kUnknownPackage);
  CHECK(code_of([&] { r.center.assign_package("irs-404", "A", {1, 0, 0}, Activation::kActive); }) ==
        ErrorCode::kUnknownStation);
}

TEST_CASE("heartbeat replies carry actions with archives") {
  Rig r;
  r.center.publish_package(testing::archive_of({.name = "A"}));
  auto replies = r.center.handle_frame(
      "irs-001", json{{"kind", "HELLO"}, {"hardware_id", "hw-1"}, {"link_profile", "UMTS"}, {"region_class", "URBAN"}});
  CHECK(replies.empty());
  CHECK(r.center.station("irs-001").identity.region_class == RegionClass::kUrban);

  r.center.assign_package("irs-001", "A", {1, 0, 0}, Activation::kActive);
  replies = r.center.handle_frame("irs-001", json{{"kind", "HEARTBEAT"}, {"reported", ReportedState{}}});
  REQUIRE(replies.size() == 1);
  CHECK(replies[0]["kind"] == "ACTIONS");
  CHECK(actions_from_json(replies[0]["actions"]) ==
        ActionList{action::Install{"A", {1, 0, 0}}, action::Activate{"A"}});
  const auto archive = base64_decode(replies[0]["archives"]["A@1.0.0"].get<std::string>());
  CHECK(archive == r.center.fetch_archive("A", {1, 0, 0}));

  // A report alone does not trigger another plan.
  CHECK(r.center.handle_frame("irs-001", json{{"kind", "REPORT"}, {"reported", ReportedState{}}}).empty());
  CHECK(code_of([&] { r.center.handle_frame("irs-001", json{{"kind", "ACTIONS"}}); }) == ErrorCode::kMalformedFrame);
}

TEST_CASE("fault ingestion applies decisions") {
  Rig r;
  r.center.register_station(ident("hw-1", "irs-001"));
  r.center.publish_package(testing::archive_of({.name = "f"}));
  r.center.assign_package("irs-001", "f", {1, 0, 0}, Activation::kActive);

  FaultEvent e;
  e.station = "irs-001";
  e.layer = FaultLayer::kFunction;
  e.severity = Severity::kError;
  e.subject = "f";
  e.ladder_exhausted = true;
  CHECK(r.center.ingest_fault(e).has(DecisionKind::kQuarantineFunction));
  CHECK(r.center.station("irs-001").desired.assignments.at("f").activation == Activation::kInactive);

  e.layer = FaultLayer::kOs;
  e.severity = Severity::kCritical;
  e.subject = "os";
  CHECK(r.center.ingest_fault(e).has(DecisionKind::kReprovisionStation));
  CHECK(r.center.notifications().size() == 1);
  const auto out = r.center.take_outbox("irs-001");
  REQUIRE(out.size() == 1);
  CHECK(out[0]["decision"] == "REPROVISION_STATION");

  CHECK(r.center.faults(std::nullopt, 0).size() == 2);
  CHECK(r.center.faults(std::nullopt, 1).size() == 1);
  CHECK(r.center.faults(std::string("irs-002"), 0).empty());
  e.station = "irs-404";
  CHECK(code_of([&] { r.center.ingest_fault(e); }) == ErrorCode::kUnknownStation);
}

TEST_CASE("operator strategy needs a reachable station") {
  Rig r;
  r.center.register_station(ident("hw-1", "irs-001"));
  CHECK(code_of([&] { r.center.order_strategy("irs-001", "RESTART_FUNCTION", "f"); }) ==
        ErrorCode::kIllegalTransition);
  r.center.handle_frame("irs-001", json{{"kind", "HEARTBEAT"}});
  CHECK(code_of([&] { r.center.order_strategy("irs-001", "JUMP", "f"); }) == ErrorCode::kInvalidArgument);
  r.center.order_strategy("irs-001", "RESTART_FUNCTION", "f");
  CHECK(r.center.operator_log().size() == 1);
}

TEST_CASE("fleet summary counts") {
  Rig r;
  CHECK(r.center.fleet_summary() == FleetSummary{});
  r.center.publish_package(testing::archive_of({.name = "A"}));
  for (int i = 0; i < 3; ++i) {
    r.center.register_station(ident("hw-" + std::to_string(i), "irs-" + std::to_string(i), "XDSL", RegionClass(i)));
  }
  r.now = at(seconds(100));
  r.center.handle_frame("irs-0", json{{"kind", "HEARTBEAT"}, {"reported", ReportedState{}}});
  r.center.handle_frame("irs-1", json{{"kind", "HEARTBEAT"}, {"reported", ReportedState{}}});
  r.center.assign_package("irs-1", "A", {1, 0, 0}, Activation::kActive);
  const auto s = r.center.fleet_summary();
  CHECK(s.stations == 3);
  CHECK(s.liveness.at(Liveness::kOnline) == 2);
  CHECK(s.liveness.at(Liveness::kOffline) == 1);
  CHECK(s.drift == 1);
  CHECK(s.regions.at(RegionClass::kHighwaySparse) == 1);
}

TEST_CASE("a crashed worker loses no acknowledged write") {
  Rig r;
  r.center.register_station(ident("hw-1", "irs-001"));
  std::map<std::string, std::uint64_t> acked;
  for (int i = 0; i < 30; ++i) {
    if (i == 10) r.center.arm_worker_crash("w2");
    const std::string app = "app" + std::to_string(i % 4);
    acked[app] = r.center.set_desired_config("irs-001", app, {{"i", std::to_string(i)}});
  }
  CHECK(r.center.crashed_requests() == 1);
  CHECK(r.center.worker_health().at("w2") == WorkerHealth::kDown);
  for (const auto& [app, v] : acked) CHECK(r.center.station("irs-001").desired.configs.at(app).version == v);
  const auto counts = r.center.dispatch_counts();
  CHECK(counts.at("w1") - counts.at("w3") <= 1);

  r.center.worker_failover("w2", WorkerHealth::kHealthy);
  const auto snap = r.center.snapshot();
  Rig other;
  other.center.restore(snap);
  CHECK(other.center.state() == r.center.state());
  CHECK_THROWS_AS(r.center.worker_failover("w9", WorkerHealth::kDown), Error);
}

TEST_CASE("concurrent writers are serialized") {
  Rig r;
  r.center.register_station(ident("hw-1", "irs-001"));
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&r] {
      for (int i = 0; i < 50; ++i) r.center.set_desired_config("irs-001", "shared", {{"k", "v"}});
    });
  }
  for (auto& t : threads) t.join();
  CHECK(r.center.station("irs-001").desired.configs.at("shared").version == 400);
}
