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

#include "irsm/center/api.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "httplib.h"
#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"

namespace irsm::center {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownStation:
    case ErrorCode::kUnknownPackage:
      return 404;
    case ErrorCode::kHardwareIdInUse:
    case ErrorCode::kDuplicateVersionConflict:
    case ErrorCode::kIllegalTransition:
      return 409;
    case ErrorCode::kDependencyUnsatisfiable:
      return 422;
    case ErrorCode::kNoWorkerAvailable:
      return 503;
    default:
      return 400;
  }
}

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(path);
  while (std::getline(in, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

json parse_body(const ApiRequest& r) {
  if (r.body.empty()) return json::object();
  json j = json::parse(r.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::kInvalidArgument, "body must be a JSON object");
  return j;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorCode::kInvalidArgument, "not a number: " + s);
  return v;
}

json station_json(const StationRecord& r, Liveness l, const ActionList& actions) {
  json j = r;
  j["liveness"] = l;
  j["actions"] = actions_to_json(actions);
  j["in_sync"] = actions.empty();
  return j;
}

}  // namespace

ApiResponse ApiRouter::handle(const ApiRequest& request) {
  ApiResponse resp;
  try {
    resp.body = route(request, resp.status);
  } catch (const Error& e) {
    resp.status = http_status(e.code());
    resp.body = json{{"error", error_code_name(e.code())}, {"detail", e.detail()}};
  } catch (const json::exception& e) {
    resp.status = 400;
    resp.body = json{{"error", "BadRequest"}, {"detail", e.what()}};
  }
  resp.body["revision"] = center_.revision();
  return resp;
}

json ApiRouter::route(const ApiRequest& r, int& status) {
  const auto p = split_path(r.path);
  const auto& m = r.method;
  auto not_found = [&]() -> json {
    status = 404;
    return json{{"error", "NotFound"}, {"detail", r.method + " " + r.path}};
  };

  if (p.size() == 1 && p[0] == "fleet" && m == "GET") {
    json tiles = json::array();
    const auto summary_faults = center_.faults(std::nullopt, 0);
    for (const auto& id : center_.station_ids()) {
      const StationRecord rec = center_.station(id);
      std::size_t open = 0;
      for (const auto& f : summary_faults) {
        if (f.event.station != id || f.event.severity < Severity::kError) continue;
        if (!rec.last_clean_report || *rec.last_clean_report < f.event.occurred_at) ++open;
      }
      tiles.push_back({{"id", id},
                       {"hardware_id", rec.identity.hardware_id},
                       {"region_class", rec.identity.region_class},
                       {"link_profile", rec.identity.link_profile},
                       {"liveness", center_.liveness(id)},
                       {"drift", !center_.actions_for(id).empty()},
                       {"open_faults", open}});
    }
    return json{{"stations", tiles}};
  }
  if (p.size() == 1 && p[0] == "summary" && m == "GET") return to_json(center_.fleet_summary());
  if (p.size() == 1 && p[0] == "faults" && m == "GET") {
    std::optional<std::string> station;
    if (auto it = r.query.find("station"); it != r.query.end() && !it->second.empty()) station = it->second;
    std::uint64_t since = 0;
    if (auto it = r.query.find("since"); it != r.query.end() && !it->second.empty()) since = parse_u64(it->second);
    const auto entries = center_.faults(station, since);
    std::uint64_t cursor = since;
    for (const auto& e : entries) cursor = std::max(cursor, e.seq);
    return json{{"faults", entries}, {"cursor", cursor}};
  }
  if (p.size() == 1 && p[0] == "stations" && m == "POST") {
    const json b = parse_body(r);
    StationIdentity id;
    id.logical_id = b.at("logical_id").get<std::string>();
    id.hardware_id = b.at("hardware_id").get<std::string>();
    id.link_profile = b.at("link_profile").get<std::string>();
    id.region_class = parse_enum<RegionClass>(b.at("region_class").get<std::string>());
    status = 201;
    return json{{"station", center_.register_station(id)}};
  }
  if (p.size() == 1 && p[0] == "packages" && m == "POST") {
    std::string archive = r.body;
    if (r.content_type.starts_with("application/json")) {
      archive = base64_decode(parse_body(r).at("archive_b64").get<std::string>());
    }
    auto [name, version] = center_.publish_package(archive);
    status = 201;
    return json{{"name", name}, {"version", version}};
  }
  if (p.size() >= 2 && p[0] == "stations") {
    const std::string& id = p[1];
    if (p.size() == 2 && m == "GET") {
      const StationRecord rec = center_.station(id);
      return station_json(rec, center_.liveness(id), center_.actions_for(id));
    }
    if (p.size() == 3 && p[2] == "actions" && m == "GET") {
      return json{{"station", id}, {"actions", actions_to_json(center_.actions_for(id))}};
    }
    if (p.size() == 3 && p[2] == "assignments" && m == "POST") {
      const json b = parse_body(r);
      const auto activation = parse_enum<Activation>(b.value("activation", std::string("ACTIVE")));
      DesiredState d = center_.assign_package(id, b.at("name").get<std::string>(),
                                              Version::parse(b.at("version").get<std::string>()), activation);
      return json{{"desired", d}};
    }
    if (p.size() == 4 && p[2] == "config" && m == "PUT") {
      const json b = parse_body(r);
      const json& entries = b.contains("entries") ? b.at("entries") : b;
      auto version = center_.set_desired_config(id, p[3], entries.get<std::map<std::string, std::string>>());
      return json{{"app", p[3]}, {"version", version}};
    }
    if (p.size() == 3 && p[2] == "strategy" && m == "POST") {
      const json b = parse_body(r);
      const std::string level = b.at("level").get<std::string>();
      center_.order_strategy(id, level, b.value("subject", std::string()));
      status = 202;
      return json{{"station", id}, {"level", level}};
    }
  }
  return not_found();
}

struct ApiServer::Impl {
  httplib::Server server;
};

ApiServer::ApiServer(ApiRouter& router, std::mutex* guard)
    : impl_(std::make_unique<Impl>()), router_(router), guard_(guard) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query[k] = v;
    r.body = req.body;
    r.content_type = req.get_header_value("Content-Type");
    ApiResponse out;
    if (guard_ != nullptr) {
      std::lock_guard lock(*guard_);
      out = router_.handle(r);
    } else {
      out = router_.handle(r);
    }
    res.status = out.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(out.body.dump(), "application/json");
  };
  const char* pattern = R"(/.*)";
  impl_->server.Get(pattern, handler);
  impl_->server.Post(pattern, handler);
  impl_->server.Put(pattern, handler);
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::start(const std::string& host, int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
  } else {
    port_ = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) throw Error(ErrorCode::kInvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void ApiServer::stop() {
  if (thread_.joinable()) {
    impl_->server.stop();
    thread_.join();
  }
}

}  // namespace irsm::center
