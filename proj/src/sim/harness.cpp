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

#include "irsm/sim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsm/center/planner.hpp"
#include "irsm/core/error.hpp"
#include "irsm/core/frame.hpp"
#include "irsm/core/link_profile.hpp"

namespace irsm::sim {

using nlohmann::json;
using netsim::Direction;
using netsim::TrafficClass;

namespace {

constexpr const char* kV2IApp = "v2i";
constexpr SimDuration kBootStagger = millis(100);
constexpr SimDuration kReplacementDelay = seconds(1);
constexpr SimDuration kHeartbeatGrace = seconds(5);

bool compare(double actual, const std::string& op, double expected) {
  if (op == "<") return actual < expected;
  if (op == "<=") return actual <= expected;
  if (op == "==") return actual == expected;
  if (op == "!=") return actual != expected;
  if (op == ">=") return actual >= expected;
  return actual > expected;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

struct Simulation::Node {
  StationSpec spec;
  std::string hardware;
  std::unique_ptr<agent::Agent> agent;
  FrameDecoder up;
  FrameDecoder down;
  netsim::SfBuffer buffer;
  double load = 0.0;
  SimTime booted_at{};
  std::map<std::pair<std::string, std::uint64_t>, SimTime> heartbeats_sent;
  std::set<std::pair<std::string, std::uint64_t>> heartbeats_delivered;
  bool converged = false;
  std::optional<SimTime> converged_at;
};

struct Simulation::Flood {
  FloodSpec spec;
  std::uint64_t rate = 0;
  std::uint64_t generation = 0;
  bool active = false;
};

bool Report::passed() const {
  return std::all_of(asserts.begin(), asserts.end(), [](const AssertOutcome& a) { return a.passed; });
}

json Report::to_json() const {
  json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["ended_at_s"] = to_seconds(ended_at);
  j["passed"] = passed();
  j["metrics"] = metrics;
  json a = json::array();
  for (const auto& o : asserts) {
    a.push_back({{"line", o.line},
                 {"at_s", to_seconds(o.at)},
                 {"metric", o.metric},
                 {"op", o.op},
                 {"expected", o.expected},
                 {"actual", o.actual},
                 {"passed", o.passed}});
  }
  j["asserts"] = a;
  j["summary"] = center::to_json(summary);
  j["faults"] = faults;
  json conv = json::object();
  for (const auto& [id, t] : convergence_times) conv[id] = t ? json(*t) : json(nullptr);
  j["convergence_times_s"] = conv;
  j["dispatch_counts"] = dispatch_counts;
  j["trace_digest"] = trace_digest;
  j["trace_events"] = trace_events;
  return j;
}

Simulation::Simulation(Scenario scenario, std::optional<std::uint64_t> seed)
    : scenario_(std::move(scenario)), seed_(seed.value_or(scenario_.seed)) {
  netsim::FabricConfig fc;
  fc.reserved_permille = scenario_.center.reserved_permille;
  fabric_ = std::make_unique<netsim::Fabric>(clock_, trace_, seed_, fc);
  fabric_->set_recording(true);
  center::CenterConfig cc;
  cc.workers = scenario_.center.workers;
  cc.heartbeat_interval = scenario_.heartbeat_interval;
  center_ = std::make_unique<center::ManagementCenter>([this] { return clock_.now(); }, cc);
  fabric_->set_center_receiver([this](const netsim::Delivery& d) { on_center_delivery(d); });
  for (const auto& s : scenario_.stations) {
    auto n = std::make_unique<Node>();
    n->spec = s;
    n->hardware = s.hardware;
    const auto profile = find_builtin_profile(s.profile);
    if (!profile) throw Error(ErrorCode::kScenarioParse, "unknown link profile " + s.profile);
    fabric_->attach_station(s.id, *profile);
    fabric_->set_app_rate(s.id, kV2IApp, std::max<std::uint64_t>(1, fabric_->function_rate(s.id) / 4));
    fabric_->set_station_receiver(s.id, [this](const netsim::Delivery& d) { on_station_delivery(d); });
    nodes_[s.id] = std::move(n);
  }
  for (const auto& p : scenario_.packages) {
    if (p.flood) floods_[{"", p.manifest.name}].spec = *p.flood;
  }
}

Simulation::~Simulation() {
  for (auto& [_, n] : nodes_) n->agent.reset();
}

Simulation::Node& Simulation::node(const std::string& station) {
  auto it = nodes_.find(station);
  if (it == nodes_.end()) throw Error(ErrorCode::kUnknownTarget, "station " + station);
  return *it->second;
}

agent::Agent* Simulation::agent(const std::string& station) {
  auto it = nodes_.find(station);
  return it == nodes_.end() ? nullptr : it->second->agent.get();
}

const netsim::SfBuffer* Simulation::buffer(const std::string& station) const {
  auto it = nodes_.find(station);
  return it == nodes_.end() ? nullptr : &it->second->buffer;
}

void Simulation::start() {
  if (started_) return;
  started_ = true;
  trace_.record(clock_.now(), "SCENARIO", "name=" + scenario_.name + " seed=" + std::to_string(seed_) +
                                              " stations=" + std::to_string(nodes_.size()));
  for (const auto& p : scenario_.packages) center_->publish_package(p.archive);
  std::size_t index = 0;
  for (auto& [id, n] : nodes_) {
    center_->register_station({id, n->hardware, n->spec.profile, n->spec.region});
    n->agent = make_agent(*n, n->hardware);
    Node* raw = n.get();
    clock_.schedule(clock_.now() + kBootStagger * static_cast<int>(index), id + ":power-on", [this, raw] { boot(*raw, raw->spec.boot); });
    if (scenario_.center.ping_interval > SimDuration::zero()) {
      const SimTime first =
          clock_.now() + kBootStagger * static_cast<int>(index) + scenario_.center.ping_interval / 2;
      clock_.schedule(first, id + ":ping", [this, id] { ping(id); });
    }
    ++index;
  }
  for (const auto& d : scenario_.timeline) {
    const Directive* dp = &d;
    clock_.schedule(d.at, "directive", [this, dp] { execute(*dp); });
  }
  clock_.schedule(clock_.now() + seconds(1), "v2i-tick", [this] { v2i_tick(); });
  clock_.schedule(clock_.now() + seconds(1), "sample", [this] { sample_tick(); });
}

std::unique_ptr<agent::Agent> Simulation::make_agent(Node& n, const std::string& hardware) {
  agent::AgentConfig cfg;
  cfg.heartbeat_interval = scenario_.heartbeat_interval;
  cfg.reserved_permille = scenario_.center.reserved_permille;
  agent::AgentIo io;
  io.clock = &clock_;
  io.send = [this, &n](const json& frame) { agent_send(n, frame); };
  io.link_up = [this, &n] { return fabric_->link_up(n.spec.id); };
  io.behavior = [this](const std::string& name) -> const agent::FunctionBehavior* {
    const auto* p = scenario_.package(name);
    return p == nullptr ? nullptr : &p->behavior;
  };
  io.on_function = [this, &n](const PackageManifest& m, bool active) { on_function(n, m, active); };
  io.set_link = [this, &n](bool up) { fabric_->set_link_up(n.spec.id, up); };
  return std::make_unique<agent::Agent>(StationIdentity{n.spec.id, hardware, n.spec.profile, n.spec.region}, cfg,
                                        std::move(io));
}

void Simulation::boot(Node& n, agent::BootFaults faults) {
  n.booted_at = clock_.now();
  const auto rep = n.agent->boot(faults);
  trace_.record(clock_.now(), "BOOT", "station=" + n.spec.id + " hardware=" + n.hardware +
                                          " state=" + std::string(agent::to_string(rep.state)));
}

void Simulation::agent_send(Node& n, const json& frame) {
  const std::string bytes = encode_frame(frame);
  for (std::size_t off = 0; off < bytes.size(); off += kManagementChunk) {
    fabric_->send(n.spec.id, Direction::kUp, TrafficClass::Management(), bytes.substr(off, kManagementChunk));
  }
  if (frame.value("kind", std::string()) == "HEARTBEAT") {
    ++heartbeats_sent_;
    n.heartbeats_sent[{frame.value("hardware_id", std::string()), frame.value("seq", std::uint64_t{0})}] =
        clock_.now();
  }
}

void Simulation::send_down(const std::string& station, const json& frame) {
  const std::string bytes = encode_frame(frame);
  try {
    for (std::size_t off = 0; off < bytes.size(); off += kManagementChunk) {
      fabric_->send(station, Direction::kDown, TrafficClass::Management(), bytes.substr(off, kManagementChunk));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLinkDown) throw;
    trace_.record(clock_.now(), "DOWNLINK_UNREACHABLE",
                  "station=" + station + " kind=" + frame.value("kind", std::string()));
  }
}

void Simulation::on_center_delivery(const netsim::Delivery& d) {
  if (!d.traffic_class.management) return;
  Node& n = node(d.station);
  n.up.feed(d.payload);
  while (true) {
    std::optional<json> body;
    try {
      body = n.up.next();
    } catch (const Error& e) {
      trace_.record(clock_.now(), "DECODE_ERROR", "station=" + d.station + " direction=UP");
      n.up = FrameDecoder();
      return;
    }
    if (!body) return;
    const std::string kind = body->value("kind", std::string());
    if (kind == "HEARTBEAT") {
      n.heartbeats_delivered.insert({body->value("hardware_id", std::string()), body->value("seq", std::uint64_t{0})});
    } else if (kind == "PONG" && body->contains("sent_us")) {
      const double rtt = to_seconds(clock_.now() - from_micros(body->at("sent_us").get<std::int64_t>()));
      ++pings_answered_;
      ping_rtt_max_ = std::max(ping_rtt_max_, rtt);
      trace_.record(clock_.now(), "PING_RTT", "station=" + d.station + " rtt=" + fmt(rtt));
    } else if (kind == "FAULT") {
      const auto& ev = body->at("event");
      trace_.record(clock_.now(), "FAULT",
                    "station=" + d.station + " layer=" + ev.value("layer", std::string()) +
                        " severity=" + ev.value("severity", std::string()) + " subject=" +
                        ev.value("subject", std::string()) +
                        (ev.contains("rung") && !ev["rung"].is_null() ? " rung=" + ev["rung"].get<std::string>() : ""));
    }
    std::vector<json> replies;
    try {
      replies = center_->handle_frame(d.station, *body);
    } catch (const Error& e) {
      trace_.record(clock_.now(), "CENTER_ERROR",
                    "station=" + d.station + " code=" + std::string(error_code_name(e.code())));
      continue;
    }
    for (const auto& r : replies) send_down(d.station, r);
  }
}

void Simulation::on_station_delivery(const netsim::Delivery& d) {
  Node& n = node(d.station);
  if (!d.traffic_class.management) {
    if (d.traffic_class.app != kV2IApp) return;
    FrameDecoder dec;
    dec.feed(d.payload);
    const auto body = dec.next();
    if (!body) return;
    auto warning = netsim::bridge_center_to_v2i(n.buffer, *body, d.station, clock_.now());
    if (warning) {
      ++v2i_rejected_;
      trace_.record(clock_.now(), "V2I_REJECTED", "station=" + d.station + " detail=" + warning->detail);
      if (n.agent) n.agent->handle_fault(*warning);
    } else {
      trace_.record(clock_.now(), "V2I_ENQUEUED",
                    "station=" + d.station + " msg=" + body->at("message").value("msg_id", std::string()));
    }
    return;
  }
  n.down.feed(d.payload);
  while (true) {
    std::optional<json> body;
    try {
      body = n.down.next();
    } catch (const Error&) {
      trace_.record(clock_.now(), "DECODE_ERROR", "station=" + d.station + " direction=DOWN");
      n.down = FrameDecoder();
      return;
    }
    if (!body) return;
    if (n.agent) n.agent->receive(*body);
  }
}

void Simulation::on_function(Node& n, const PackageManifest& m, bool active) {
  trace_.record(clock_.now(), active ? "FUNCTION_UP" : "FUNCTION_DOWN", "station=" + n.spec.id + " app=" + m.name);
  auto proto = floods_.find({"", m.name});
  if (proto == floods_.end()) return;
  Flood& f = floods_[{n.spec.id, m.name}];
  f.spec = proto->second.spec;
  f.rate = std::max<std::uint64_t>(1, m.quota.bandwidth_up);
  ++f.generation;
  f.active = active;
  if (!active) return;
  fabric_->set_app_rate(n.spec.id, m.name, f.rate);
  const SimTime first = std::max(clock_.now(), f.spec.start);
  if (first >= f.spec.start + f.spec.duration) return;
  const std::string station = n.spec.id;
  const std::string app = m.name;
  const std::uint64_t gen = f.generation;
  clock_.schedule(first, station + ":flood", [this, station, app, gen] { flood_tick(station, app, gen); });
}

void Simulation::flood_tick(const std::string& station, const std::string& app, std::uint64_t generation) {
  Flood& f = floods_[{station, app}];
  if (!f.active || f.generation != generation) return;
  if (clock_.now() >= f.spec.start + f.spec.duration) return;
  try {
    fabric_->send(station, Direction::kUp, TrafficClass::Function(app), "F", f.spec.frame_size);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLinkDown) throw;
  }
  // Offered rate is factor x shaped rate.
  const double offered = f.spec.factor * static_cast<double>(f.rate);
  const auto gap = std::max<std::int64_t>(1, std::llround(1e6 * static_cast<double>(f.spec.frame_size) / offered));
  clock_.schedule(clock_.now() + SimDuration{gap}, station + ":flood",
                  [this, station, app, generation] { flood_tick(station, app, generation); });
}

void Simulation::ping(const std::string& station) {
  ++pings_sent_;
  send_down(station, json{{"kind", "PING"}, {"nonce", next_nonce_++}, {"sent_us", micros(clock_.now())}});
  clock_.schedule(clock_.now() + scenario_.center.ping_interval, station + ":ping", [this, station] { ping(station); });
}

void Simulation::v2i_tick() {
  for (auto& [id, n] : nodes_) {
    if (n->buffer.size() == 0) continue;
    const auto res = n->buffer.distribution_tick(n->spec.neighbors, n->load, clock_.now());
    for (const auto& b : res.broadcasts) {
      ++v2i_broadcasts_;
      auto exp = v2i_expiry_.find(b.msg_id);
      if (exp != v2i_expiry_.end() && clock_.now() >= exp->second) ++v2i_after_expiry_;
      trace_.record(clock_.now(), "V2I_BROADCAST",
                    "station=" + id + " msg=" + b.msg_id + " n=" + std::to_string(b.broadcast_number));
    }
    for (const auto& r : res.removed) {
      if (r.under_redundancy()) ++v2i_under_redundancy_;
      trace_.record(clock_.now(), r.under_redundancy() ? "V2I_UNDER_REDUNDANCY" : "V2I_DONE",
                    "station=" + id + " msg=" + r.msg_id + " broadcasts=" + std::to_string(r.broadcasts_done));
    }
  }
  clock_.schedule(clock_.now() + seconds(1), "v2i-tick", [this] { v2i_tick(); });
}

void Simulation::sample_tick() {
  sample();
  clock_.schedule(clock_.now() + seconds(1), "sample", [this] { sample_tick(); });
}

void Simulation::sample() {
  const center::CenterState st = center_->state();
  for (auto& [id, n] : nodes_) {
    auto it = st.stations.find(id);
    const bool conv = it != st.stations.end() && it->second.reported &&
                      center::compute_actions(it->second.desired, it->second.reported).empty();
    if (conv != n->converged) {
      n->converged = conv;
      n->converged_at = conv ? std::optional<SimTime>(clock_.now()) : std::nullopt;
      trace_.record(clock_.now(), conv ? "CONVERGED" : "DIVERGED", "station=" + id);
    }
  }
}

void Simulation::execute(const Directive& d) {
  trace_.record(clock_.now(), "DIRECTIVE", std::string(to_string(d.kind)) + " line=" + std::to_string(d.line));
  if (d.kind == DirectiveKind::kAssert) {
    sample();
    AssertOutcome o;
    o.line = d.line;
    o.at = clock_.now();
    o.metric = d.metric;
    o.op = d.op;
    o.expected = d.value;
    o.actual = metric(d.metric);
    o.passed = compare(o.actual, d.op, d.value);
    asserts_.push_back(o);
    trace_.record(clock_.now(), o.passed ? "ASSERT_PASS" : "ASSERT_FAIL",
                  d.metric + " " + d.op + " " + fmt(d.value) + " actual=" + fmt(o.actual));
    return;
  }
  if (d.kind == DirectiveKind::kInjectFault) {
    for (int i = 0; i < d.repeat; ++i) {
      const SimTime when = clock_.now() + d.spacing * i;
      Directive once = d;
      once.repeat = 1;
      clock_.schedule(when, "inject", [this, once] {
        for (const auto& id : once.stations) {
          Node& n = node(id);
          trace_.record(clock_.now(), "INJECT",
                        "station=" + id + " layer=" + std::string(to_string(once.fault.layer)) +
                            " subject=" + once.fault.subject);
          if (n.agent) n.agent->inject(once.fault);
        }
      });
    }
    return;
  }
  apply(d);
}

bool Simulation::apply(const Directive& d) {
  try {
    switch (d.kind) {
      case DirectiveKind::kAssign:
        for (const auto& id : d.stations) {
          center_->assign_package(id, d.package, d.version, d.activation);
          acked_assignments_[{id, d.package}] = {d.version, d.activation};
        }
        break;
      case DirectiveKind::kConfigure:
        for (const auto& id : d.stations) {
          const auto version = center_->set_desired_config(id, d.app, d.entries);
          acked_configs_[{id, d.app}] = ConfigSet{d.app, version, d.entries};
        }
        break;
      case DirectiveKind::kInjectFault:
        for (const auto& id : d.stations) {
          if (auto* a = agent(id)) a->inject(d.fault);
        }
        break;
      case DirectiveKind::kKillWorker:
        center_->arm_worker_crash(d.worker);
        trace_.record(clock_.now(), "WORKER_ARMED", "worker=" + d.worker);
        break;
      case DirectiveKind::kReplaceHardware: {
        Node& n = node(d.stations.front());
        replaced_[n.spec.id] = center_->state().stations.at(n.spec.id).desired;
        if (n.agent) n.agent->power_off();
        n.agent.reset();
        n.hardware = d.hardware;
        n.buffer = netsim::SfBuffer();
        n.agent = make_agent(n, d.hardware);
        trace_.record(clock_.now(), "REPLACED", "station=" + n.spec.id + " hardware=" + d.hardware);
        Node* raw = &n;
        clock_.schedule(clock_.now() + kReplacementDelay, n.spec.id + ":power-on", [this, raw] { boot(*raw, {}); });
        break;
      }
      case DirectiveKind::kPostV2I:
        v2i_expiry_[d.message.msg_id] = d.message.expiry;
        for (const auto& id : d.stations) {
          Node& n = node(id);
          if (d.message.origin == MessageOrigin::kCenter) {
            const std::string bytes = encode_frame(json{{"kind", "V2I"}, {"message", d.message}});
            try {
              fabric_->send(id, Direction::kDown, TrafficClass::Function(kV2IApp), bytes);
            } catch (const Error& e) {
              if (e.code() != ErrorCode::kLinkDown) throw;
              trace_.record(clock_.now(), "DOWNLINK_UNREACHABLE", "station=" + id + " kind=V2I");
            }
          } else {
            auto warning = netsim::relay_vehicle_message(n.buffer, d.message, id, clock_.now());
            if (warning) {
              ++v2i_rejected_;
              trace_.record(clock_.now(), "V2I_REJECTED", "station=" + id + " detail=" + warning->detail);
              if (n.agent) n.agent->handle_fault(*warning);
            } else {
              trace_.record(clock_.now(), "V2I_RELAYED", "station=" + id + " msg=" + d.message.msg_id);
            }
          }
        }
        break;
      case DirectiveKind::kSetChannelLoad:
        for (const auto& id : d.stations) node(id).load = d.load;
        break;
      case DirectiveKind::kAssert:
        execute(d);
        break;
    }
    return true;
  } catch (const Error& e) {
    ++directive_errors_;
    trace_.record(clock_.now(), "DIRECTIVE_ERROR",
                  std::string(to_string(d.kind)) + " code=" + std::string(error_code_name(e.code())) + " " + e.detail());
    return false;
  }
}

double Simulation::function_rate_excess() const {
  // Largest overshoot, in bytes, of delivered bytes over rate x window + burst
  // for windows of 10 s and of the whole flood.
  double worst = 0.0;
  for (const auto& [key, f] : floods_) {
    if (key.first.empty() || f.rate == 0) continue;
    const auto& stats = fabric_->stats(key.first, Direction::kUp, TrafficClass::Function(key.second));
    const auto& del = stats.deliveries;
    for (const SimDuration window : {seconds(10), f.spec.duration}) {
      const std::int64_t w = window.count();
      const __int128 allowance = static_cast<__int128>(f.rate) * w + static_cast<__int128>(f.rate) * 1'000'000;
      std::size_t j = 0;
      __int128 bytes = 0;
      for (std::size_t i = 0; i < del.size(); ++i) {
        if (j < i) {
          j = i;
          bytes = 0;
        }
        while (j < del.size() && del[j].first - del[i].first <= window) bytes += del[j++].second;
        const __int128 over = bytes * 1'000'000 - allowance;
        if (over > 0) worst = std::max(worst, static_cast<double>(over) / 1e6);
        bytes -= del[i].second;
      }
    }
  }
  return worst;
}

double Simulation::metric(const std::string& name) {
  const center::CenterState st = center_->state();
  const double count = static_cast<double>(nodes_.size());
  auto fraction = [&](double x) { return count == 0 ? 1.0 : x / count; };

  if (name == "stations") return count;
  if (name == "converged" || name == "converged_fraction" || name == "drift") {
    double c = 0;
    for (const auto& [id, r] : st.stations) {
      if (nodes_.contains(id) && r.reported && center::compute_actions(r.desired, r.reported).empty()) ++c;
    }
    if (name == "converged") return c;
    if (name == "drift") return count - c;
    return fraction(c);
  }
  if (name == "max_convergence_time") {
    double worst = 0;
    for (const auto& [id, n] : nodes_) {
      if (!n->converged_at) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, to_seconds(*n->converged_at));
    }
    return worst;
  }
  if (name == "online_fraction" || name == "offline_stations") {
    double online = 0, offline = 0;
    for (const auto& [id, r] : st.stations) {
      const auto l = center::liveness_at(r, clock_.now(), scenario_.heartbeat_interval);
      online += l == Liveness::kOnline;
      offline += l == Liveness::kOffline;
    }
    return name == "online_fraction" ? fraction(online) : offline;
  }
  if (name == "running_fraction") {
    double running = 0;
    for (const auto& [id, n] : nodes_) running += n->agent && n->agent->state() == agent::AgentState::kRunning;
    return fraction(running);
  }
  if (name == "acked_write_loss") {
    double lost = 0;
    for (const auto& [key, v] : acked_assignments_) {
      const auto& desired = st.stations.at(key.first).desired;
      auto it = desired.assignments.find(key.second);
      // A later quarantine may deactivate the package; the version write must survive.
      if (it == desired.assignments.end() || it->second.version != v.first) ++lost;
    }
    for (const auto& [key, c] : acked_configs_) {
      const auto& desired = st.stations.at(key.first).desired;
      auto it = desired.configs.find(key.second);
      if (it == desired.configs.end() || it->second.version < c.version ||
          (it->second.version == c.version && it->second != c)) {
        ++lost;
      }
    }
    return lost;
  }
  if (name == "dispatch_spread") {
    std::vector<std::uint64_t> counts;
    const auto health = center_->worker_health();
    for (const auto& [w, c] : center_->dispatch_counts()) {
      if (health.at(w) == center::WorkerHealth::kHealthy) counts.push_back(c);
    }
    if (counts.empty()) return 0;
    return static_cast<double>(*std::max_element(counts.begin(), counts.end()) -
                               *std::min_element(counts.begin(), counts.end()));
  }
  if (name == "crashed_requests") return static_cast<double>(center_->crashed_requests());
  if (name == "operator_directives") return static_cast<double>(st.operator_log.size());
  if (name == "notifications") return static_cast<double>(st.notifications.size());
  if (name == "faults_total") return static_cast<double>(st.faults.size());
  if (name == "escalations" || name == "quarantines" || name == "open_critical") {
    double c = 0;
    for (const auto& f : st.faults) {
      if (name == "escalations") c += f.event.ladder_exhausted;
      if (name == "quarantines") c += f.decision.has(DecisionKind::kQuarantineFunction);
      if (name == "open_critical" && f.event.severity == Severity::kCritical) {
        const auto& r = st.stations.at(f.event.station);
        c += !r.last_clean_report || *r.last_clean_report < f.event.occurred_at;
      }
    }
    return c;
  }
  if (name == "heartbeats_lost") {
    double lost = 0;
    for (const auto& [id, n] : nodes_) {
      for (const auto& [key, sent] : n->heartbeats_sent) {
        if (sent + kHeartbeatGrace <= clock_.now() && !n->heartbeats_delivered.contains(key)) ++lost;
      }
    }
    return lost;
  }
  if (name == "ping_rtt_max") return ping_rtt_max_;
  if (name == "pings_answered") return static_cast<double>(pings_answered_);
  if (name == "function_rate_excess") return function_rate_excess();
  if (name == "v2i_broadcasts") return static_cast<double>(v2i_broadcasts_);
  if (name == "v2i_under_redundancy") return static_cast<double>(v2i_under_redundancy_);
  if (name == "v2i_rejected") return static_cast<double>(v2i_rejected_);
  if (name == "v2i_broadcast_after_expiry") return static_cast<double>(v2i_after_expiry_);
  if (name == "replacement_match") {
    if (replaced_.empty()) return 1.0;
    double ok = 0;
    for (const auto& [id, desired] : replaced_) {
      const Node& n = *nodes_.at(id);
      ok += n.agent && reported_matches(desired, n.agent->reported());
    }
    return ok / static_cast<double>(replaced_.size());
  }
  if (name == "directive_errors") return static_cast<double>(directive_errors_);
  throw Error(ErrorCode::kInvalidArgument, "unknown metric " + name);
}

void Simulation::advance_to(SimTime t) {
  start();
  if (t > clock_.now()) clock_.advance(t);
}

Report Simulation::run() {
  start();
  advance_to(at(scenario_.duration));
  return report();
}

Report Simulation::report() {
  sample();
  Report r;
  r.scenario = scenario_.name;
  r.seed = seed_;
  r.ended_at = clock_.now();
  for (const auto& m : known_metrics()) r.metrics[m] = metric(m);
  r.asserts = asserts_;
  const center::CenterState st = center_->state();
  center::CenterConfig cc;
  cc.heartbeat_interval = scenario_.heartbeat_interval;
  r.summary = center::summarize(st, clock_.now(), cc);
  for (const auto& f : st.faults) r.faults.push_back(f);
  for (const auto& [id, n] : nodes_) {
    r.convergence_times[id] = n->converged_at ? std::optional<double>(to_seconds(*n->converged_at)) : std::nullopt;
  }
  r.dispatch_counts = center_->dispatch_counts();
  r.trace_digest = trace_.digest();
  r.trace_events = trace_.lines().size();
  return r;
}

}  // namespace irsm::sim
