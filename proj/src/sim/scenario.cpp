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

#include "irsm/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "irsm/core/error.hpp"
#include "irsm/core/link_profile.hpp"

namespace irsm::sim {

std::string_view to_string(DirectiveKind k) {
  switch (k) {
    case DirectiveKind::kAssign: return "ASSIGN";
    case DirectiveKind::kConfigure: return "CONFIGURE";
    case DirectiveKind::kInjectFault: return "INJECT_FAULT";
    case DirectiveKind::kKillWorker: return "KILL_WORKER";
    case DirectiveKind::kReplaceHardware: return "REPLACE_HARDWARE";
    case DirectiveKind::kPostV2I: return "POST_V2I";
    case DirectiveKind::kSetChannelLoad: return "SET_CHANNEL_LOAD";
    case DirectiveKind::kAssert: return "ASSERT";
  }
  return "?";
}

const StationSpec* Scenario::station(const std::string& id) const {
  for (const auto& s : stations) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const PackageSpec* Scenario::package(const std::string& name) const {
  const PackageSpec* found = nullptr;
  for (const auto& p : packages) {
    if (p.manifest.name == name) found = &p;
  }
  return found;
}

const std::set<std::string>& known_metrics() {
  static const std::set<std::string> names{
      "acked_write_loss",     "converged",          "converged_fraction",   "crashed_requests",
      "directive_errors",     "dispatch_spread",    "drift",                "escalations",
      "faults_total",         "function_rate_excess", "heartbeats_lost",    "max_convergence_time",
      "notifications",        "offline_stations",   "online_fraction",      "open_critical",
      "operator_directives",  "ping_rtt_max",       "pings_answered",       "quarantines",
      "replacement_match",    "running_fraction",   "stations",             "v2i_broadcast_after_expiry",
      "v2i_broadcasts",       "v2i_rejected",       "v2i_under_redundancy",
  };
  return names;
}

namespace {

[[noreturn]] void fail(const YAML::Node& n, const std::string& what) {
  const int line = n.IsDefined() ? n.Mark().line + 1 : 0;
  throw Error(ErrorCode::kScenarioParse, "line " + std::to_string(line) + ": " + what);
}

template <typename T>
T get(const YAML::Node& n, const char* key) {
  const YAML::Node v = n[key];
  if (!v) fail(n, std::string("missing '") + key + "'");
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    fail(v, std::string("bad value for '") + key + "'");
  }
}

template <typename T>
T get_or(const YAML::Node& n, const char* key, T fallback) {
  if (!n.IsDefined()) return fallback;
  if (!n.IsMap()) fail(n, "expected a mapping");
  const YAML::Node v = n[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    fail(v, std::string("bad value for '") + key + "'");
  }
}

template <typename E>
E get_enum(const YAML::Node& n, const char* key, std::optional<E> fallback = std::nullopt) {
  const YAML::Node v = n[key];
  if (!v) {
    if (fallback) return *fallback;
    fail(n, std::string("missing '") + key + "'");
  }
  auto parsed = enum_from_string<E>(v.as<std::string>());
  if (!parsed) fail(v, "unknown value '" + v.as<std::string>() + "' for '" + key + "'");
  return *parsed;
}

SimDuration get_duration(const YAML::Node& n, const char* key, SimDuration fallback) {
  const YAML::Node v = n[key];
  if (!v) return fallback;
  double s = 0;
  try {
    s = v.as<double>();
  } catch (const YAML::Exception&) {
    fail(v, std::string("bad duration for '") + key + "'");
  }
  if (s < 0) fail(v, std::string("negative duration for '") + key + "'");
  return seconds_f(s);
}

Version get_version(const YAML::Node& n, const char* key) {
  try {
    return Version::parse(get<std::string>(n, key));
  } catch (const Error&) {
    fail(n[key], std::string("bad version for '") + key + "'");
  }
}

std::map<std::string, std::string> get_string_map(const YAML::Node& n) {
  std::map<std::string, std::string> out;
  if (!n) return out;
  if (!n.IsMap()) fail(n, "expected a mapping");
  for (const auto& kv : n) out[kv.first.as<std::string>()] = kv.second.as<std::string>();
  return out;
}

std::vector<std::string> get_string_list(const YAML::Node& n) {
  std::vector<std::string> out;
  if (!n) return out;
  if (n.IsScalar()) return {n.as<std::string>()};
  if (!n.IsSequence()) fail(n, "expected a list");
  for (const auto& v : n) out.push_back(v.as<std::string>());
  return out;
}

std::map<RegionClass, double> get_mix(const YAML::Node& n) {
  std::map<RegionClass, double> mix;
  for (const auto& kv : n) {
    auto r = enum_from_string<RegionClass>(kv.first.as<std::string>());
    if (!r) fail(kv.first, "unknown region class " + kv.first.as<std::string>());
    mix[*r] = kv.second.as<double>();
  }
  return mix;
}

PackageSpec parse_package(const YAML::Node& n) {
  if (!n.IsMap()) fail(n, "package must be a mapping");
  nlohmann::json m;
  m["name"] = get<std::string>(n, "name");
  m["version"] = get<std::string>(n, "version");
  m["pkg_type"] = get_or<std::string>(n, "type", "FUNCTION");
  m["priority"] = get_or<int>(n, "priority", m["pkg_type"] == "MANAGEMENT" ? 255 : 100);
  nlohmann::json deps = nlohmann::json::array();
  for (const auto& d : n["depends"]) {
    deps.push_back({{"name", get<std::string>(d, "name")}, {"version", get<std::string>(d, "version")}});
  }
  m["depends"] = deps;
  const YAML::Node q = n["quota"];
  m["quota"] = {{"cpu_share", get_or<std::uint64_t>(q, "cpu_share", 100)},
                {"ram", get_or<std::uint64_t>(q, "ram", 16ull << 20)},
                {"disk", get_or<std::uint64_t>(q, "disk", 1ull << 20)},
                {"bandwidth_up", get_or<std::uint64_t>(q, "bandwidth_up", 200)},
                {"bandwidth_v2i", get_or<std::uint64_t>(q, "bandwidth_v2i", 0)}};
  PackageSpec p;
  p.payload = get_string_map(n["payload"]);
  if (p.payload.empty()) p.payload["bin/" + m["name"].get<std::string>()] = m["name"].get<std::string>();
  m["payload_digest"] = payload_digest(p.payload);
  try {
    p.manifest = validate_manifest(m);
  } catch (const Error& e) {
    fail(n, e.what());
  }
  p.archive = build_package_archive(p.manifest, p.payload);
  if (const YAML::Node b = n["behavior"]) {
    p.behavior.spec.provides = get_string_list(b["provides"]);
    p.behavior.spec.consumes = get_string_list(b["consumes"]);
    p.behavior.failing_installs = get_or<int>(b, "failing_installs", 0);
    if (const YAML::Node f = b["flood"]) {
      FloodSpec fs;
      fs.factor = get_or<double>(f, "factor", 10.0);
      fs.start = at(get_duration(f, "start", SimDuration::zero()));
      fs.duration = get_duration(f, "duration", seconds(60));
      fs.frame_size = get_or<std::uint64_t>(f, "frame", 100);
      if (fs.factor <= 0 || fs.frame_size == 0) fail(f, "flood needs factor > 0 and frame > 0");
      p.flood = fs;
    }
  }
  return p;
}

StationSpec parse_station(const YAML::Node& n) {
  StationSpec s;
  s.id = get<std::string>(n, "id");
  s.hardware = get_or<std::string>(n, "hardware", "hw-" + s.id);
  s.profile = get_or<std::string>(n, "profile", "FIBER");
  if (!find_builtin_profile(s.profile)) fail(n["profile"], "unknown link profile " + s.profile);
  s.region = get_enum<RegionClass>(n, "region", RegionClass::kRural);
  s.neighbors = get_or<int>(n, "neighbors", 5);
  if (const YAML::Node b = n["boot"]) {
    s.boot.os = get_or<bool>(b, "os", false);
    s.boot.framework = get_or<bool>(b, "framework", false);
  }
  return s;
}

std::vector<std::string> targets(const Scenario& sc, const YAML::Node& n, const char* key) {
  const YAML::Node v = n[key];
  if (!v) fail(n, std::string("missing '") + key + "'");
  std::vector<std::string> ids = get_string_list(v);
  if (ids.size() == 1 && ids[0] == "ALL") {
    ids.clear();
    for (const auto& s : sc.stations) ids.push_back(s.id);
    return ids;
  }
  for (const auto& id : ids) {
    if (sc.station(id) == nullptr) {
      throw Error(ErrorCode::kUnknownTarget, "line " + std::to_string(v.Mark().line + 1) + ": " + id);
    }
  }
  return ids;
}

Directive parse_directive(const Scenario& sc, const YAML::Node& n) {
  Directive d;
  d.line = n.Mark().line + 1;
  d.at = at(get_duration(n, "at", SimDuration::zero()));
  const auto kind = get<std::string>(n, "do");
  if (kind == "ASSIGN") {
    d.kind = DirectiveKind::kAssign;
    d.stations = targets(sc, n, "station");
    d.package = get<std::string>(n, "package");
    d.version = get_version(n, "version");
    d.activation = get_enum<Activation>(n, "activation", Activation::kActive);
  } else if (kind == "CONFIGURE") {
    d.kind = DirectiveKind::kConfigure;
    d.stations = targets(sc, n, "station");
    d.app = get<std::string>(n, "app");
    d.entries = get_string_map(n["entries"]);
  } else if (kind == "INJECT_FAULT") {
    agent::InjectedFault f;
    f.layer = get_enum<FaultLayer>(n, "layer");
    f.severity = get_enum<Severity>(n, "severity", Severity::kError);
    f.subject = get_or<std::string>(n, "subject", "");
    f.clears_after = get_or<int>(n, "clears_after", 1);
    f.duration = get_duration(n, "duration", seconds(25));
    f.detail = get_or<std::string>(n, "detail", "");
    const int repeat = get_or<int>(n, "repeat", 1);
    if (repeat < 1) fail(n["repeat"], "repeat must be >= 1");
    const SimDuration spacing = get_duration(n, "spacing", seconds(30));
    std::vector<std::string> ids = targets(sc, n, "station");
    d = inject(sc, ids.front(), f, d.at, repeat, spacing);
    d.stations = ids;
    d.line = n.Mark().line + 1;
  } else if (kind == "KILL_WORKER") {
    d.kind = DirectiveKind::kKillWorker;
    d.worker = get<std::string>(n, "worker");
    if (std::find(sc.center.workers.begin(), sc.center.workers.end(), d.worker) == sc.center.workers.end()) {
      throw Error(ErrorCode::kUnknownTarget, "line " + std::to_string(d.line) + ": worker " + d.worker);
    }
  } else if (kind == "REPLACE_HARDWARE") {
    d.kind = DirectiveKind::kReplaceHardware;
    d.stations = targets(sc, n, "station");
    if (d.stations.size() != 1) fail(n, "REPLACE_HARDWARE takes one station");
    d.hardware = get<std::string>(n, "hardware");
  } else if (kind == "POST_V2I") {
    d.kind = DirectiveKind::kPostV2I;
    d.stations = targets(sc, n, "station");
    const YAML::Node m = n["message"];
    if (!m) fail(n, "missing 'message'");
    d.message.msg_id = get<std::string>(m, "msg_id");
    d.message.msg_type = get_enum<MessageType>(m, "msg_type", MessageType::kDenmLike);
    d.message.priority = get_or<int>(m, "priority", 100);
    d.message.size = get_or<std::uint64_t>(m, "size", 200);
    d.message.redundancy = get_or<int>(m, "redundancy", 3);
    d.message.created_at = d.at;
    d.message.expiry = d.at + get_duration(m, "expiry_in", seconds(10));
    d.message.origin = get_enum<MessageOrigin>(m, "origin", MessageOrigin::kCenter);
    if (d.message.size == 0 || d.message.redundancy < 1 || d.message.expiry <= d.message.created_at ||
        d.message.priority < 0 || d.message.priority > 255) {
      fail(m, "message violates size > 0, redundancy >= 1, expiry after creation, priority 0-255");
    }
  } else if (kind == "SET_CHANNEL_LOAD") {
    d.kind = DirectiveKind::kSetChannelLoad;
    d.stations = targets(sc, n, "station");
    d.load = get<double>(n, "load");
    if (d.load < 0 || d.load > 1) fail(n["load"], "load must lie in [0,1]");
  } else if (kind == "ASSERT") {
    d.kind = DirectiveKind::kAssert;
    d.metric = get<std::string>(n, "metric");
    if (!known_metrics().contains(d.metric)) fail(n["metric"], "unknown metric " + d.metric);
    d.op = get_or<std::string>(n, "op", ">=");
    static const std::set<std::string> ops{"<", "<=", "==", "!=", ">=", ">"};
    if (!ops.contains(d.op)) fail(n["op"], "unknown operator " + d.op);
    d.value = get<double>(n, "value");
  } else {
    fail(n["do"], "unknown directive " + kind);
  }
  return d;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kScenarioParse, e.what());
  }
  if (!root.IsMap()) throw Error(ErrorCode::kScenarioParse, "scenario must be a mapping");
  try {
    Scenario sc;
    sc.name = get_or<std::string>(root, "name", "scenario");
    sc.seed = get_or<std::uint64_t>(root, "seed", 1);
    sc.duration = get_duration(root, "duration", seconds(120));
    sc.heartbeat_interval = get_duration(root, "heartbeat_interval", seconds(10));
    if (sc.heartbeat_interval <= SimDuration::zero()) fail(root["heartbeat_interval"], "must be positive");
    if (const YAML::Node c = root["center"]) {
      if (c["workers"]) sc.center.workers = get_string_list(c["workers"]);
      if (sc.center.workers.empty()) fail(c, "center needs at least one worker");
      sc.center.ping_interval = get_duration(c, "ping_interval", SimDuration::zero());
      const double share = get_or<double>(c, "reserved_share", 0.1);
      if (share <= 0 || share >= 1) fail(c["reserved_share"], "reserved_share must lie in (0,1)");
      sc.center.reserved_permille = static_cast<std::uint32_t>(std::lround(share * 1000));
    }
    if (const YAML::Node f = root["fleet"]) {
      const int count = get<int>(f, "count");
      std::map<RegionClass, double> mix;
      if (f["mix"]) {
        mix = get_mix(f["mix"]);
      } else {
        for (std::size_t i = 0; i < enum_count<RegionClass>(); ++i) mix[static_cast<RegionClass>(i)] = 1.0;
      }
      try {
        sc.stations = fleet_bootstrap(count, mix);
      } catch (const Error& e) {
        fail(f, e.detail());
      }
    }
    for (const auto& s : root["stations"]) {
      StationSpec spec = parse_station(s);
      if (sc.station(spec.id) != nullptr) fail(s, "duplicate station " + spec.id);
      sc.stations.push_back(spec);
    }
    std::set<std::string> hardware;
    for (const auto& s : sc.stations) {
      if (!hardware.insert(s.hardware).second) throw Error(ErrorCode::kScenarioParse, "duplicate hardware " + s.hardware);
    }
    for (const auto& p : root["packages"]) {
      PackageSpec spec = parse_package(p);
      for (const auto& other : sc.packages) {
        if (other.manifest.name == spec.manifest.name && other.manifest.version == spec.manifest.version) {
          fail(p, "duplicate package " + spec.manifest.name + " " + spec.manifest.version.to_string());
        }
      }
      sc.packages.push_back(std::move(spec));
    }
    SimTime last{};
    for (const auto& n : root["timeline"]) {
      Directive d = parse_directive(sc, n);
      if (d.at < last) fail(n, "timeline times must be nondecreasing");
      last = d.at;
      if (d.kind == DirectiveKind::kAssign &&
          std::none_of(sc.packages.begin(), sc.packages.end(), [&](const PackageSpec& p) {
            return p.manifest.name == d.package && p.manifest.version == d.version;
          })) {
        throw Error(ErrorCode::kUnknownTarget,
                    "line " + std::to_string(d.line) + ": package " + d.package + " " + d.version.to_string());
      }
      sc.timeline.push_back(std::move(d));
    }
    return sc;
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kScenarioParse, e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kScenarioParse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::vector<StationSpec> fleet_bootstrap(int count, const std::map<RegionClass, double>& mix) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "count must be >= 1");
  double total = 0;
  for (const auto& [_, w] : mix) {
    if (w < 0) throw Error(ErrorCode::kInvalidArgument, "mix weights must be >= 0");
    total += w;
  }
  if (total <= 0) throw Error(ErrorCode::kInvalidArgument, "mix must have a positive weight");

  // Largest remainder; equal remainders go to the earlier region class.
  struct Share {
    RegionClass region;
    long long base;
    double remainder;
  };
  std::vector<Share> shares;
  long long assigned = 0;
  for (const auto& [r, w] : mix) {
    const double exact = count * w / total;
    const auto base = static_cast<long long>(std::floor(exact + 1e-9));
    shares.push_back({r, base, exact - static_cast<double>(base)});
    assigned += base;
  }
  std::vector<std::size_t> order(shares.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(shares[a].remainder - shares[b].remainder) > 1e-9) return shares[a].remainder > shares[b].remainder;
    return shares[a].region < shares[b].region;
  });
  for (std::size_t i = 0; assigned < count; ++i, ++assigned) ++shares[order[i % order.size()]].base;

  static const char* kProfiles[] = {"FIBER", "XDSL", "UMTS", "GPRS"};
  std::vector<StationSpec> out;
  int n = 0;
  for (const auto& s : shares) {
    for (long long i = 0; i < s.base; ++i) {
      char id[32], hw[32];
      std::snprintf(id, sizeof id, "irs-%03d", n + 1);
      std::snprintf(hw, sizeof hw, "hw-%03d", n + 1);
      StationSpec spec;
      spec.id = id;
      spec.hardware = hw;
      spec.profile = kProfiles[n % 4];
      spec.region = s.region;
      out.push_back(spec);
      ++n;
    }
  }
  return out;
}

std::string stations_to_yaml(const std::vector<StationSpec>& stations) {
  YAML::Emitter out;
  out << YAML::BeginMap << YAML::Key << "stations" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : stations) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << s.id;
    out << YAML::Key << "hardware" << YAML::Value << s.hardware;
    out << YAML::Key << "profile" << YAML::Value << s.profile;
    out << YAML::Key << "region" << YAML::Value << std::string(to_string(s.region));
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Directive inject(const Scenario& scenario, const std::string& target, const agent::InjectedFault& fault,
                 SimTime at_time, int repeat, SimDuration spacing) {
  if (scenario.station(target) == nullptr) throw Error(ErrorCode::kUnknownTarget, "station " + target);
  if (fault.layer == FaultLayer::kFunction && scenario.package(fault.subject) == nullptr) {
    throw Error(ErrorCode::kUnknownTarget, "function " + fault.subject);
  }
  if (repeat < 1) throw Error(ErrorCode::kInvalidArgument, "repeat must be >= 1");
  Directive d;
  d.kind = DirectiveKind::kInjectFault;
  d.at = at_time;
  d.stations = {target};
  d.fault = fault;
  d.repeat = repeat;
  d.spacing = spacing;
  return d;
}

}  // namespace irsm::sim
