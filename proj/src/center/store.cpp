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

#include "irsm/center/store.hpp"

#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"

namespace irsm::center {

using nlohmann::json;

namespace {

json opt_time(const std::optional<SimTime>& t) { return t ? json(micros(*t)) : json(nullptr); }

std::optional<SimTime> time_opt(const json& j) {
  if (j.is_null()) return std::nullopt;
  return from_micros(j.get<std::int64_t>());
}

}  // namespace

Liveness liveness_at(const StationRecord& r, SimTime now, SimDuration heartbeat_interval, int suspect_after,
                     int offline_after) {
  if (!r.last_heartbeat) return Liveness::kOffline;
  const auto elapsed = now - *r.last_heartbeat;
  if (elapsed <= heartbeat_interval * suspect_after) return Liveness::kOnline;
  if (elapsed <= heartbeat_interval * offline_after) return Liveness::kSuspect;
  return Liveness::kOffline;
}

void to_json(json& j, const StationRecord& v) {
  j = json{{"identity", v.identity},
           {"desired", v.desired},
           {"reported", v.reported ? json(*v.reported) : json(nullptr)},
           {"last_heartbeat_us", opt_time(v.last_heartbeat)},
           {"last_clean_report_us", opt_time(v.last_clean_report)},
           {"last_checks", v.last_checks},
           {"outbox", v.outbox}};
}

void from_json(const json& j, StationRecord& v) {
  v.identity = j.at("identity").get<StationIdentity>();
  v.desired = j.at("desired").get<DesiredState>();
  if (j.at("reported").is_null()) {
    v.reported.reset();
  } else {
    v.reported = j.at("reported").get<ReportedState>();
  }
  v.last_heartbeat = time_opt(j.at("last_heartbeat_us"));
  v.last_clean_report = time_opt(j.at("last_clean_report_us"));
  v.last_checks = j.at("last_checks").get<std::vector<LocalCheckResult>>();
  v.outbox.clear();
  for (const auto& f : j.at("outbox")) v.outbox.push_back(f);
}

void to_json(json& j, const FaultLogEntry& v) {
  j = json{{"seq", v.seq}, {"event", v.event}, {"decision", v.decision}};
}

void from_json(const json& j, FaultLogEntry& v) {
  v.seq = j.at("seq").get<std::uint64_t>();
  v.event = j.at("event").get<FaultEvent>();
  v.decision = j.at("decision").get<CentralDecision>();
}

void to_json(json& j, const OperatorEntry& v) {
  j = json{{"seq", v.seq},
           {"at_us", micros(v.at)},
           {"station", v.station},
           {"directive", v.directive},
           {"argument", v.argument}};
}

void from_json(const json& j, OperatorEntry& v) {
  v.seq = j.at("seq").get<std::uint64_t>();
  v.at = from_micros(j.at("at_us").get<std::int64_t>());
  v.station = j.at("station").get<std::string>();
  v.directive = j.at("directive").get<std::string>();
  v.argument = j.at("argument").get<std::string>();
}

json to_json(const CenterState& s) {
  json notes = json::array();
  for (const auto& n : s.notifications) {
    notes.push_back({{"fault_seq", n.fault_seq}, {"station", n.station}, {"rationale", n.rationale}});
  }
  return json{{"revision", s.revision},
              {"stations", s.stations},
              {"hardware_index", s.hardware_index},
              {"repository", s.repository.to_json()},
              {"faults", s.faults},
              {"operator_log", s.operator_log},
              {"notifications", notes}};
}

CenterState center_state_from_json(const json& j) {
  CenterState s;
  s.revision = j.at("revision").get<std::uint64_t>();
  s.stations = j.at("stations").get<std::map<std::string, StationRecord>>();
  s.hardware_index = j.at("hardware_index").get<std::map<std::string, std::string>>();
  s.repository = PackageRepository::from_json(j.at("repository"));
  s.faults = j.at("faults").get<std::vector<FaultLogEntry>>();
  s.operator_log = j.at("operator_log").get<std::vector<OperatorEntry>>();
  for (const auto& n : j.at("notifications")) {
    s.notifications.push_back(
        {n.at("fault_seq").get<std::uint64_t>(), n.at("station").get<std::string>(), n.at("rationale").get<std::string>()});
  }
  return s;
}

std::string snapshot(const CenterState& s) {
  std::string doc = to_json(s).dump();
  std::string digest = sha256_hex(doc);
  return doc + "\n" + digest + "\n";
}

CenterState restore(std::string_view blob) {
  if (blob.size() < 66 || blob.back() != '\n') throw Error(ErrorCode::kCorruptSnapshot, "truncated snapshot");
  const auto body_end = blob.rfind('\n', blob.size() - 2);
  if (body_end == std::string_view::npos) throw Error(ErrorCode::kCorruptSnapshot, "missing digest line");
  const auto doc = blob.substr(0, body_end);
  const auto digest = blob.substr(body_end + 1, blob.size() - body_end - 2);
  if (sha256_hex(doc) != digest) throw Error(ErrorCode::kCorruptSnapshot, "digest mismatch");
  try {
    return center_state_from_json(json::parse(doc));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptSnapshot, e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptSnapshot, e.what());
  }
}

}  // namespace irsm::center
