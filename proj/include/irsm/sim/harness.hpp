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

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/agent/agent.hpp"
#include "irsm/center/center.hpp"
#include "irsm/netsim/clock.hpp"
#include "irsm/netsim/fabric.hpp"
#include "irsm/netsim/sf_buffer.hpp"
#include "irsm/netsim/trace.hpp"
#include "irsm/sim/scenario.hpp"

namespace irsm::sim {

struct AssertOutcome {
  int line = 0;
  SimTime at{};
  std::string metric;
  std::string op;
  double expected = 0.0;
  double actual = 0.0;
  bool passed = false;
};

struct Report {
  std::string scenario;
  std::uint64_t seed = 0;
  SimTime ended_at{};
  std::map<std::string, double> metrics;
  std::vector<AssertOutcome> asserts;
  center::FleetSummary summary;
  nlohmann::json faults = nlohmann::json::array();
  // Seconds at which each station last became converged; null while drifting.
  std::map<std::string, std::optional<double>> convergence_times;
  std::map<std::string, std::uint64_t> dispatch_counts;
  std::string trace_digest;
  std::size_t trace_events = 0;

  bool passed() const;
  nlohmann::json to_json() const;
};

// Management frames larger than this are split over several fabric frames.
inline constexpr std::size_t kManagementChunk = 1024;

// Center, agents and fabric wired together over one virtual clock.
class Simulation {
 public:
  explicit Simulation(Scenario scenario, std::optional<std::uint64_t> seed = std::nullopt);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // Provisions stations and packages, schedules boots and the timeline.
  void start();
  void advance_to(SimTime t);
  // start() when needed, then advance to the scenario duration.
  Report run();
  Report report();

  double metric(const std::string& name);
  // Applies a directive now. Returns false when it raised an error.
  bool apply(const Directive& d);

  const Scenario& scenario() const { return scenario_; }
  std::uint64_t seed() const { return seed_; }
  SimTime now() const { return clock_.now(); }
  netsim::VirtualClock& clock() { return clock_; }
  netsim::Fabric& fabric() { return *fabric_; }
  const netsim::Trace& trace() const { return trace_; }
  center::ManagementCenter& center() { return *center_; }
  agent::Agent* agent(const std::string& station);
  const netsim::SfBuffer* buffer(const std::string& station) const;

 private:
  struct Node;
  struct Flood;

  Node& node(const std::string& station);
  void boot(Node& n, agent::BootFaults faults);
  std::unique_ptr<agent::Agent> make_agent(Node& n, const std::string& hardware);
  void agent_send(Node& n, const nlohmann::json& frame);
  void send_down(const std::string& station, const nlohmann::json& frame);
  void on_center_delivery(const netsim::Delivery& d);
  void on_station_delivery(const netsim::Delivery& d);
  void on_function(Node& n, const PackageManifest& m, bool active);
  void flood_tick(const std::string& station, const std::string& app, std::uint64_t generation);
  void ping(const std::string& station);
  void v2i_tick();
  void sample();
  void sample_tick();
  void execute(const Directive& d);
  double function_rate_excess() const;

  Scenario scenario_;
  std::uint64_t seed_;
  bool started_ = false;
  netsim::VirtualClock clock_;
  netsim::Trace trace_;
  std::unique_ptr<netsim::Fabric> fabric_;
  std::unique_ptr<center::ManagementCenter> center_;
  std::map<std::string, std::unique_ptr<Node>> nodes_;
  std::map<std::pair<std::string, std::string>, Flood> floods_;

  // Last acknowledged writes: (station, package) and (station, app).
  std::map<std::pair<std::string, std::string>, std::pair<Version, Activation>> acked_assignments_;
  std::map<std::pair<std::string, std::string>, ConfigSet> acked_configs_;
  std::map<std::string, DesiredState> replaced_;
  std::map<std::string, SimTime> v2i_expiry_;

  std::vector<AssertOutcome> asserts_;
  std::uint64_t directive_errors_ = 0;
  std::uint64_t heartbeats_sent_ = 0;
  std::uint64_t pings_sent_ = 0;
  std::uint64_t pings_answered_ = 0;
  double ping_rtt_max_ = 0.0;
  std::uint64_t v2i_broadcasts_ = 0;
  std::uint64_t v2i_under_redundancy_ = 0;
  std::uint64_t v2i_rejected_ = 0;
  std::uint64_t v2i_after_expiry_ = 0;
  std::uint64_t next_nonce_ = 1;
};

}  // namespace irsm::sim
