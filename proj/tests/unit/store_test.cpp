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

#include "doctest.h"
#include "irsm/center/center.hpp"
#include "irsm/core/error.hpp"
#include "support.hpp"

using namespace irsm;
using namespace irsm::center;

namespace {

CenterState populated() {
  CenterState s;
  s.revision = 77;
  for (int i = 0; i < 10; ++i) {
    s.repository.publish(testing::archive_of({.name = "pkg" + std::to_string(i), .version = "1." + std::to_string(i) + ".0"}));
  }
  for (int i = 0; i < 100; ++i) {
    StationRecord r;
    char id[16];
    std::snprintf(id, sizeof id, "irs-%03d", i);
    r.identity = StationIdentity{id, "hw-" + std::to_string(i), i % 2 ? "GPRS" : "FIBER", RegionClass(i % 4)};
    r.desired.assignments["pkg" + std::to_string(i % 10)] =
        Assignment{Version{1, static_cast<std::uint32_t>(i % 10), 0}, Activation::kActive, {}};
    r.desired.configs["system"] = ConfigSet{"system", static_cast<std::uint64_t>(i), {{"ntp", "pool"}}};
    if (i % 3) {
      ReportedState rep;
      rep.installed["pkg0"] = Version{1, 0, 0};
      rep.active = {"pkg0"};
      rep.health["pkg0"] = FunctionHealth::kRunning;
      r.reported = rep;
      r.last_heartbeat = at(seconds(i));
    }
    r.last_checks = {LocalCheckResult{CheckName::kDiskSpace, CheckStatus::kPass, "ok"}};
    if (i == 5) r.outbox.push_back({{"kind", "DECISION"}, {"decision", "REPROVISION_STATION"}});
    s.hardware_index[r.identity.hardware_id] = id;
    s.stations[id] = r;
  }
  FaultEvent e;
  e.station = "irs-001";
  e.subject = "pkg1";
  e.severity = Severity::kError;
  e.rung = StrategyRung::kRestartFunction;
  s.faults.push_back(FaultLogEntry{1, e, CentralDecision{{{DecisionKind::kAckLogged, ""}}, "log"}});
  s.operator_log.push_back(OperatorEntry{1, at(seconds(3)), "irs-002", "ORDER_STRATEGY", "REBOOT_AGENT"});
  s.notifications.push_back(Notification{1, "irs-001", "why"});
  return s;
}

}  // namespace

TEST_CASE("snapshot roundtrip") {
  CHECK(restore(snapshot(CenterState{})) == CenterState{});
  const auto s = populated();
  const auto blob = snapshot(s);
  CHECK(restore(blob) == s);
  CHECK(snapshot(restore(blob)) == blob);
}

TEST_CASE("corrupt snapshots are rejected") {
  const auto blob = snapshot(populated());
  for (std::size_t cut : {std::size_t{0}, blob.size() / 2, blob.size() - 10}) {
    try {
      restore(blob.substr(0, cut));
      FAIL("truncated snapshot accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCorruptSnapshot);
    }
  }
  std::string flipped = blob;
  flipped[blob.find("irs-050")] = 'X';
  CHECK_THROWS_AS(restore(flipped), Error);
}

TEST_CASE("liveness thresholds") {
  StationRecord r;
  CHECK(liveness_at(r, at(seconds(0)), seconds(10)) == Liveness::kOffline);
  r.last_heartbeat = at(seconds(100));
  CHECK(liveness_at(r, at(seconds(110)), seconds(10)) == Liveness::kOnline);
  CHECK(liveness_at(r, at(seconds(121)), seconds(10)) == Liveness::kSuspect);
  CHECK(liveness_at(r, at(seconds(161)), seconds(10)) == Liveness::kOffline);
}

TEST_CASE("repository publish rules") {
  PackageRepository repo;
  const auto bytes = testing::archive_of({.name = "tls-demo"});
  CHECK(repo.publish(bytes) == std::pair<std::string, Version>{"tls-demo", {1, 0, 0}});
  CHECK(repo.publish(bytes) == std::pair<std::string, Version>{"tls-demo", {1, 0, 0}});
  CHECK(repo.size() == 1);

  testing::PackageDraft other{.name = "tls-demo"};
  other.payload = {{"bin/tls", "different"}};
  try {
    repo.publish(testing::archive_of(other));
    FAIL("conflicting version accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDuplicateVersionConflict);
  }

  // Manifest claims a digest the payload does not have.
  const auto m = testing::manifest_of({.name = "liar"});
  const auto lying = build_package_archive(m, {{"bin/liar", "tampered"}});
  try {
    repo.publish(lying);
    FAIL("digest mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedArchive);
  }
  CHECK_THROWS_AS(repo.publish("garbage"), Error);

  repo.publish(testing::archive_of({.name = "tls-demo", .version = "1.4.0"}));
  repo.publish(testing::archive_of({.name = "tls-demo", .version = "2.0.0"}));
  CHECK(repo.newest_satisfying("tls-demo", {1, 1, 0})->manifest.version == Version{2, 0, 0});
  CHECK(repo.newest_satisfying("tls-demo", {3, 0, 0}) == nullptr);
  CHECK(PackageRepository::from_json(repo.to_json()) == repo);
}
