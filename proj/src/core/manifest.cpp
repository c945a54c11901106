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

#include "irsm/core/manifest.hpp"

#include <algorithm>

#include "irsm/core/error.hpp"

namespace irsm {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedManifest, what);
}

const json& require(const json& raw, const char* key) {
  auto it = raw.find(key);
  if (it == raw.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& raw, const char* key) {
  const json& v = require(raw, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Version parse_version_field(const json& v, const std::string& where) {
  if (!v.is_string()) malformed(where + " must be a version string");
  try {
    return Version::parse(v.get<std::string>());
  } catch (const Error&) {
    malformed(where + " has bad version syntax '" + v.get<std::string>() + "'");
  }
}

std::uint64_t quota_field(const json& q, const char* key) {
  auto it = q.find(key);
  if (it == q.end()) return 0;
  if (!it->is_number_integer()) malformed(std::string("quota.") + key + " must be an integer");
  if (it->get<std::int64_t>() < 0) {
    throw Error(ErrorCode::kInvariantViolation, std::string("quota.") + key + " is negative");
  }
  return it->get<std::uint64_t>();
}

bool is_hex_digest(const std::string& s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace

ResourceQuota quota_from_json(const json& q) {
  if (!q.is_object()) malformed("quota must be an object");
  return ResourceQuota{quota_field(q, "cpu_share"), quota_field(q, "ram"), quota_field(q, "disk"),
                       quota_field(q, "bandwidth_up"), quota_field(q, "bandwidth_v2i")};
}

PackageManifest validate_manifest(const json& raw) {
  if (!raw.is_object()) malformed("manifest must be a JSON object");

  PackageManifest m;
  m.name = require_string(raw, "name");
  if (m.name.empty()) malformed("name is empty");
  m.version = parse_version_field(require(raw, "version"), "version");

  // "type" is accepted as a shorthand for "pkg_type".
  const json* type_field = raw.contains("pkg_type") ? &raw.at("pkg_type")
                           : raw.contains("type")   ? &raw.at("type")
                                                    : nullptr;
  if (type_field == nullptr) malformed("missing field 'pkg_type'");
  if (!type_field->is_string()) malformed("pkg_type must be a string");
  auto type = enum_from_string<PackageType>(type_field->get<std::string>());
  if (!type) malformed("unknown pkg_type '" + type_field->get<std::string>() + "'");
  m.pkg_type = *type;

  const json& prio = require(raw, "priority");
  if (!prio.is_number_integer()) malformed("priority must be an integer");
  const auto p = prio.get<std::int64_t>();
  if (p < 0 || p > 255) throw Error(ErrorCode::kInvariantViolation, "priority out of range 0..255");
  m.priority = static_cast<int>(p);

  if (auto it = raw.find("depends"); it != raw.end()) {
    if (!it->is_array()) malformed("depends must be an array");
    for (const json& d : *it) {
      if (!d.is_object()) malformed("dependency must be an object");
      Dependency dep;
      dep.name = require_string(d, "name");
      if (dep.name.empty()) malformed("dependency name is empty");
      dep.min_version = parse_version_field(require(d, "version"), "dependency version");
      m.depends.push_back(std::move(dep));
    }
  }

  if (auto it = raw.find("quota"); it != raw.end()) m.quota = quota_from_json(*it);

  m.payload_digest = require_string(raw, "payload_digest");
  if (!is_hex_digest(m.payload_digest)) malformed("payload_digest must be 64 lower-case hex chars");

  if (m.pkg_type == PackageType::kManagement && m.priority != kManagementPriority) {
    throw Error(ErrorCode::kInvariantViolation, "MANAGEMENT package must have priority 255");
  }
  for (const auto& d : m.depends) {
    if (d.name == m.name) {
      throw Error(ErrorCode::kInvariantViolation, "self-dependency on '" + m.name + "'");
    }
  }
  return m;
}

json to_json(const ResourceQuota& q) {
  return json{{"cpu_share", q.cpu_share},
              {"ram", q.ram},
              {"disk", q.disk},
              {"bandwidth_up", q.bandwidth_up},
              {"bandwidth_v2i", q.bandwidth_v2i}};
}

json to_json(const PackageManifest& m) {
  json deps = json::array();
  for (const auto& d : m.depends) deps.push_back({{"name", d.name}, {"version", d.min_version}});
  return json{{"name", m.name},
              {"version", m.version},
              {"pkg_type", m.pkg_type},
              {"depends", std::move(deps)},
              {"priority", m.priority},
              {"quota", to_json(m.quota)},
              {"payload_digest", m.payload_digest}};
}

}  // namespace irsm
