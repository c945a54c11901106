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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "irsm/agent/agent.hpp"
#include "irsm/core/archive.hpp"
#include "irsm/core/model.hpp"

namespace irsm::sim {

struct StationSpec {
  std::string id;
  std::string hardware;
  std::string profile;
  RegionClass region = RegionClass::kRural;
  int neighbors = 5;
  agent::BootFaults boot;

  bool operator==(const StationSpec&) const = default;
};

// A function app offering `factor` times its shaped upstream rate.
struct FloodSpec {
  double factor = 10.0;
  SimTime start{};
  SimDuration duration{};
  std::uint64_t frame_size = 100;
};

struct PackageSpec {
  PackageManifest manifest;
  PayloadFiles payload;
  agent::FunctionBehavior behavior;
  std::optional<FloodSpec> flood;
  std::string archive;
};

enum class DirectiveKind {
  kAssign,
  kConfigure,
  kInjectFault,
  kKillWorker,
  kReplaceHardware,
  kPostV2I,
  kSetChannelLoad,
  kAssert,
};

struct Directive {
  SimTime at{};
  DirectiveKind kind = DirectiveKind::kAssert;
  std::vector<std::string> stations;

  std::string package;  // ASSIGN
  Version version;
  Activation activation = Activation::kActive;

  std::string app;  // CONFIGURE
  std::map<std::string, std::string> entries;

  agent::InjectedFault fault;  // INJECT_FAULT
  int repeat = 1;
  SimDuration spacing = seconds(30);

  std::string worker;    // KILL_WORKER
  std::string hardware;  // REPLACE_HARDWARE

  V2IMessage message;  // POST_V2I

  double load = 0.0;  // SET_CHANNEL_LOAD

  std::string metric;  // ASSERT
  std::string op = ">=";
  double value = 0.0;

  int line = 0;
};

struct CenterSpec {
  std::vector<std::string> workers{"w1", "w2", "w3"};
  SimDuration ping_interval{};  // zero: no pings
  std::uint32_t reserved_permille = 100;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  SimDuration duration = seconds(120);
  SimDuration heartbeat_interval = seconds(10);
  CenterSpec center;
  std::vector<StationSpec> stations;
  std::vector<PackageSpec> packages;
  std::vector<Directive> timeline;

  const StationSpec* station(const std::string& id) const;
  // Last definition of `name`; later entries are newer versions.
  const PackageSpec* package(const std::string& name) const;
};

// Names accepted by ASSERT.
const std::set<std::string>& known_metrics();

// Throws Error(kScenarioParse) for malformed documents and
// Error(kUnknownTarget) for directives naming stations that do not exist.
Scenario parse_scenario(const std::string& yaml);
Scenario load_scenario(const std::string& path);

// `count` stations split over the region classes by largest remainder
// (ties in enum order); profiles assigned round-robin FIBER, XDSL, UMTS,
// GPRS; ids irs-001.. and hw-001... Throws Error(kInvalidArgument) for
// count < 1 or an empty mix.
std::vector<StationSpec> fleet_bootstrap(int count, const std::map<RegionClass, double>& mix);
std::string stations_to_yaml(const std::vector<StationSpec>& stations);

// Builds an INJECT_FAULT directive. Throws Error(kUnknownTarget) when the
// station is not in the scenario or a FUNCTION fault names no package.
Directive inject(const Scenario& scenario, const std::string& target, const agent::InjectedFault& fault,
                 SimTime at, int repeat = 1, SimDuration spacing = seconds(30));

std::string_view to_string(DirectiveKind k);

}  // namespace irsm::sim
