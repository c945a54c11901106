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
#include <string>
#include <vector>

#include "json.hpp"
#include "irsm/core/archive.hpp"
#include "irsm/core/manifest.hpp"

namespace irsm::testing {

struct PackageDraft {
  std::string name;
  std::string version = "1.0.0";
  std::string type = "FUNCTION";
  int priority = 100;
  std::vector<std::pair<std::string, std::string>> depends;
  ResourceQuota quota{100, 1 << 20, 1 << 16, 500, 0};
  PayloadFiles payload;
};

inline PackageManifest manifest_of(const PackageDraft& d) {
  PayloadFiles payload = d.payload.empty() ? PayloadFiles{{"bin/" + d.name, d.name + "@" + d.version}} : d.payload;
  nlohmann::json deps = nlohmann::json::array();
  for (const auto& [n, v] : d.depends) deps.push_back({{"name", n}, {"version", v}});
  return validate_manifest(nlohmann::json{{"name", d.name},
                                          {"version", d.version},
                                          {"pkg_type", d.type},
                                          {"priority", d.priority},
                                          {"depends", deps},
                                          {"quota", to_json(d.quota)},
                                          {"payload_digest", payload_digest(payload)}});
}

inline std::string archive_of(const PackageDraft& d) {
  PayloadFiles payload = d.payload.empty() ? PayloadFiles{{"bin/" + d.name, d.name + "@" + d.version}} : d.payload;
  return build_package_archive(manifest_of(d), payload);
}

}  // namespace irsm::testing
