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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/core/enums.hpp"
#include "irsm/core/version.hpp"

namespace irsm {

inline constexpr int kManagementPriority = 255;

// Per-function resource limits. Zero on a dimension means "no access".
struct ResourceQuota {
  std::uint64_t cpu_share = 0;      // permille of one core
  std::uint64_t ram = 0;            // bytes
  std::uint64_t disk = 0;           // bytes
  std::uint64_t bandwidth_up = 0;   // bytes / second toward the center
  std::uint64_t bandwidth_v2i = 0;  // bytes / second on the broadcast channel

  bool operator==(const ResourceQuota&) const = default;
};

struct Dependency {
  std::string name;
  Version min_version;

  bool operator==(const Dependency&) const = default;
};

struct PackageManifest {
  std::string name;
  Version version;
  PackageType pkg_type = PackageType::kFunction;
  std::vector<Dependency> depends;
  int priority = 0;
  ResourceQuota quota;
  std::string payload_digest;  // lower-case SHA-256 hex

  bool operator==(const PackageManifest&) const = default;
};

// Parses and checks a manifest document.
//   MalformedManifest  - missing/mistyped field, bad version syntax, bad digest
//   InvariantViolation - MANAGEMENT priority != 255, self-dependency,
//                        priority outside 0..255, negative quota
PackageManifest validate_manifest(const nlohmann::json& raw);

nlohmann::json to_json(const PackageManifest& m);
nlohmann::json to_json(const ResourceQuota& q);
ResourceQuota quota_from_json(const nlohmann::json& j);

}  // namespace irsm
