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

#include "irsm/center/repository.hpp"

#include "irsm/core/digest.hpp"
#include "irsm/core/error.hpp"

namespace irsm::center {

std::pair<std::string, Version> PackageRepository::publish(std::string_view archive_bytes) {
  PackageArchive archive = read_package_archive(archive_bytes);
  const auto& m = archive.manifest;
  if (payload_digest(archive.payload) != m.payload_digest) {
    throw Error(ErrorCode::kMalformedArchive, "payload of " + m.name + " does not match payload_digest");
  }
  auto key = std::make_pair(m.name, m.version);
  if (auto it = entries_.find(key); it != entries_.end()) {
    if (it->second.manifest.payload_digest != m.payload_digest) {
      throw Error(ErrorCode::kDuplicateVersionConflict,
                  m.name + " " + m.version.to_string() + " already published with a different payload");
    }
    return key;
  }
  entries_.emplace(key, RepositoryEntry{m, std::string(archive_bytes)});
  return key;
}

const RepositoryEntry* PackageRepository::find(const std::string& name, const Version& version) const {
  auto it = entries_.find({name, version});
  return it == entries_.end() ? nullptr : &it->second;
}

const RepositoryEntry* PackageRepository::newest_satisfying(const std::string& name, const Version& minimum) const {
  const RepositoryEntry* best = nullptr;
  for (auto it = entries_.lower_bound({name, minimum}); it != entries_.end() && it->first.first == name; ++it) {
    best = &it->second;
  }
  return best;
}

std::vector<std::pair<std::string, Version>> PackageRepository::keys() const {
  std::vector<std::pair<std::string, Version>> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

nlohmann::json PackageRepository::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [_, e] : entries_) {
    out.push_back({{"manifest", irsm::to_json(e.manifest)}, {"archive_b64", base64_encode(e.archive)}});
  }
  return out;
}

PackageRepository PackageRepository::from_json(const nlohmann::json& j) {
  PackageRepository repo;
  for (const auto& e : j) {
    RepositoryEntry entry{validate_manifest(e.at("manifest")), base64_decode(e.at("archive_b64").get<std::string>())};
    auto key = std::make_pair(entry.manifest.name, entry.manifest.version);
    repo.entries_.emplace(std::move(key), std::move(entry));
  }
  return repo;
}

}  // namespace irsm::center
