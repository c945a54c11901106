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
#include "irsm/core/error.hpp"
#include "irsm/sim/scenario.hpp"

using namespace irsm;
using namespace irsm::sim;

namespace {

std::optional<ErrorCode> parse_code(const std::string& text, std::string* detail = nullptr) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    if (detail) *detail = e.detail();
    return e.code();
  }
  return std::nullopt;
}

const std::map<RegionClass, double> kMix{{RegionClass::kUrban, 0.3},
                                         {RegionClass::kHighwayDense, 0.3},
                                         {RegionClass::kHighwaySparse, 0.2},
                                         {RegionClass::kRural, 0.2}};

std::map<RegionClass, int> census(const std::vector<StationSpec>& s) {
  std::map<RegionClass, int> out;
  for (const auto& x : s) ++out[x.region];
  return out;
}

}  // namespace

TEST_CASE("full document") {
  const auto sc = parse_scenario(R"(
name: demo
seed: 9
duration: 90
heartbeat_interval: 5
center: {workers: [a, b], ping_interval: 2.5, reserved_share: 0.2}
stations:
  - {id: irs-001, hardware: hw-1, profile: GPRS, region: RURAL, neighbors: 0}
  - {id: irs-002, hardware: hw-2, profile: FIBER, region: URBAN, boot: {framework: true}}
packages:
  - name: tl
    version: 1.0.0
    type: FUNCTION
    priority: 120
    quota: {cpu_share: 10, ram: 1024, disk: 4096, bandwidth_up: 100}
    payload: {bin/tl: "x"}
    behavior: {failing_installs: 2}
timeline:
  - {at: 1, do: ASSIGN, station: ALL, package: tl, version: 1.0.0, activation: INACTIVE}
  - {at: 2, do: CONFIGURE, station: irs-001, app: tl, entries: {k: v}}
  - {at: 3, do: INJECT_FAULT, station: irs-002, layer: OS, severity: WARNING, subject: disk}
  - {at: 4, do: KILL_WORKER, worker: b}
  - {at: 5, do: ASSERT, metric: drift, op: "<", value: 3}
)");
  CHECK(sc.name == "demo");
  CHECK(sc.seed == 9);
  CHECK(sc.duration == seconds(90));
  CHECK(sc.heartbeat_interval == seconds(5));
  CHECK(sc.center.workers == std::vector<std::string>{"a", "b"});
  CHECK(sc.center.ping_interval == millis(2500));
  CHECK(sc.center.reserved_permille == 200);
  REQUIRE(sc.stations.size() == 2);
  CHECK(sc.stations[0].neighbors == 0);
  CHECK(sc.stations[1].boot.framework);
  REQUIRE(sc.packages.size() == 1);
  CHECK(sc.packages[0].behavior.failing_installs == 2);
  CHECK(sc.packages[0].manifest.quota.disk == 4096);
  REQUIRE(sc.timeline.size() == 5);
  CHECK(sc.timeline[0].stations == std::vector<std::string>{"irs-001", "irs-002"});
  CHECK(sc.timeline[0].activation == Activation::kInactive);
  CHECK(sc.timeline[1].entries.at("k") == "v");
  CHECK(sc.timeline[2].fault.layer == FaultLayer::kOs);
  CHECK(sc.timeline[3].kind == DirectiveKind::kKillWorker);
  CHECK(sc.timeline[4].line == 23);
  CHECK(sc.timeline[4].op == "<");
}

TEST_CASE("parse errors carry the offending line") {
  std::string detail;
  CHECK(parse_code("name: x\nduration: ten\n", &detail) == ErrorCode::kScenarioParse);
  CHECK(detail.find("line 2") != std::string::npos);

  CHECK(parse_code("stations:\n  - {id: a, hardware: h, profile: CARRIER_PIGEON}\n", &detail) ==
        ErrorCode::kScenarioParse);
  CHECK(detail.find("line 2") != std::string::npos);

  CHECK(parse_code("stations:\n  - {id: a, hardware: h, profile: GPRS}\ntimeline:\n"
                   "  - {at: 1, do: ASSERT, metric: happiness, value: 1}\n",
                   &detail) == ErrorCode::kScenarioParse);
  CHECK(detail.find("line 4") != std::string::npos);

  CHECK(parse_code("timeline:\n  - {at: 1, do: DANCE}\n") == ErrorCode::kScenarioParse);
  CHECK(parse_code("timeline:\n  - {at: 5, do: KILL_WORKER, worker: w1}\n  - {at: 4, do: KILL_WORKER, worker: w2}\n") ==
        ErrorCode::kScenarioParse);
  CHECK(parse_code("- just\n- a list\n") == ErrorCode::kScenarioParse);
  CHECK(parse_code("{unclosed") == ErrorCode::kScenarioParse);
  CHECK(parse_code("stations:\n  - {id: a, hardware: h, profile: GPRS}\n  - {id: b, hardware: h, profile: GPRS}\n") ==
        ErrorCode::kScenarioParse);
}

TEST_CASE("directives naming missing targets") {
  std::string detail;
  CHECK(parse_code("timeline:\n  - {at: 1, do: INJECT_FAULT, station: irs-404, layer: OS, severity: ERROR}\n",
                   &detail) == ErrorCode::kUnknownTarget);
  CHECK(detail.find("irs-404") != std::string::npos);
  CHECK(parse_code("stations:\n  - {id: a, hardware: h, profile: GPRS}\ntimeline:\n"
                   "  - {at: 1, do: ASSIGN, station: a, package: ghost, version: 1.0.0}\n") ==
        ErrorCode::kUnknownTarget);
  CHECK(parse_code("timeline:\n  - {at: 1, do: KILL_WORKER, worker: w9}\n") == ErrorCode::kUnknownTarget);

  Scenario sc;
  sc.stations = fleet_bootstrap(2, kMix);
  agent::InjectedFault f{FaultLayer::kFunction, Severity::kError, "ghost", 0, {}, ""};
  CHECK_THROWS_WITH_AS(inject(sc, "irs-009", f, at(seconds(1))), doctest::Contains("irs-009"), Error);
  CHECK_THROWS_AS(inject(sc, "irs-001", f, at(seconds(1))), Error);
  f.layer = FaultLayer::kOs;
  const auto d = inject(sc, "irs-001", f, at(seconds(1)), 3, seconds(5));
  CHECK(d.kind == DirectiveKind::kInjectFault);
  CHECK(d.repeat == 3);
  CHECK(d.spacing == seconds(5));
}

TEST_CASE("fleet bootstrap proportions") {
  const auto fleet = fleet_bootstrap(100, kMix);
  REQUIRE(fleet.size() == 100);
  const auto c = census(fleet);
  CHECK(c.at(RegionClass::kUrban) == 30);
  CHECK(c.at(RegionClass::kHighwayDense) == 30);
  CHECK(c.at(RegionClass::kHighwaySparse) == 20);
  CHECK(c.at(RegionClass::kRural) == 20);
  CHECK(fleet.front().id == "irs-001");
  CHECK(fleet.back().id == "irs-100");
  CHECK(fleet.back().hardware == "hw-100");
  std::map<std::string, int> profiles;
  for (const auto& s : fleet) ++profiles[s.profile];
  CHECK(profiles == std::map<std::string, int>{{"FIBER", 25}, {"GPRS", 25}, {"UMTS", 25}, {"XDSL", 25}});

  const auto one = fleet_bootstrap(1, kMix);
  REQUIRE(one.size() == 1);
  CHECK(kMix.at(one[0].region) == doctest::Approx(0.3));

  CHECK_THROWS_AS(fleet_bootstrap(0, kMix), Error);
  CHECK_THROWS_AS(fleet_bootstrap(5, {}), Error);
  CHECK_THROWS_AS(fleet_bootstrap(5, {{RegionClass::kRural, -1.0}, {RegionClass::kUrban, 2.0}}), Error);
}

TEST_CASE("bootstrap matches a Hamilton apportionment oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int count = 1 + static_cast<int>(rng() % 300);
    std::map<RegionClass, double> mix;
    for (int r = 0; r < 4; ++r) {
      if (rng() % 4) mix[RegionClass(r)] = static_cast<double>(rng() % 10);
    }
    double total = 0;
    for (const auto& [_, w] : mix) total += w;
    if (total == 0) continue;
    const auto c = census(fleet_bootstrap(count, mix));
    int sum = 0;
    for (const auto& [r, w] : mix) {
      const double exact = count * w / total;
      const int got = c.contains(r) ? c.at(r) : 0;
      CHECK(got >= static_cast<int>(std::floor(exact + 1e-9)));
      CHECK(got <= static_cast<int>(std::ceil(exact - 1e-9)));
      sum += got;
    }
    CHECK(sum == count);
  }
}

TEST_CASE("bootstrap output parses back") {
  const auto fleet = fleet_bootstrap(12, kMix);
  const auto sc = parse_scenario(stations_to_yaml(fleet));
  REQUIRE(sc.stations.size() == fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i) CHECK(sc.stations[i] == fleet[i]);
}

TEST_CASE("fleet block with explicit stations") {
  const auto sc = parse_scenario("fleet: {count: 4}\nstations:\n  - {id: extra, hardware: hw-x, profile: FIBER}\n");
  CHECK(sc.stations.size() == 5);
  CHECK(sc.station("extra") != nullptr);
  CHECK(parse_code("fleet: {count: 0}\n") == ErrorCode::kScenarioParse);
}

TEST_CASE("package lookup returns the newest definition") {
  const auto sc = parse_scenario(R"(
packages:
  - {name: a, version: 1.0.0, payload: {f: "1"}}
  - {name: a, version: 1.1.0, payload: {f: "2"}}
)");
  REQUIRE(sc.package("a"));
  CHECK(sc.package("a")->manifest.version == Version{1, 1, 0});
  CHECK(sc.package("b") == nullptr);
}

TEST_CASE("quota block is optional but must be a mapping") {
  const auto sc = parse_scenario("packages:\n  - {name: a, version: 1.0.0}\n");
  CHECK(sc.packages.at(0).manifest.quota.disk == 1u << 20);
  std::string detail;
  CHECK(parse_code("packages:\n  - {name: a, version: 1.0.0, quota: 5}\n", &detail) == ErrorCode::kScenarioParse);
  CHECK(detail.find("line 2") != std::string::npos);
}
