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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "irsm/core/archive.hpp"
#include "irsm/core/manifest.hpp"

namespace irsm::center {

struct RepositoryEntry {
  PackageManifest manifest;
  std::string archive;  // the published bytes, served to stations verbatim

  bool operator==(const RepositoryEntry&) const = default;
};

// Released packages; (name, version) pairs are immutable once published.
class PackageRepository {
 public:
  // Returns the key. Re-publishing identical content is a no-op; a different
  // digest under an existing version throws Error(kDuplicateVersionConflict).
  // Archives whose payload does not hash to the manifest digest are
  // rejected with Error(kMalformedArchive).
  std::pair<std::string, Version> publish(std::string_view archive_bytes);

  const RepositoryEntry* find(const std::string& name, const Version& version) const;
  // Newest version of `name` that is >= `minimum`.
  const RepositoryEntry* newest_satisfying(const std::string& name, const Version& minimum) const;

  std::vector<std::pair<std::string, Version>> keys() const;
  std::size_t size() const { return entries_.size(); }

  bool operator==(const PackageRepository&) const = default;

  nlohmann::json to_json() const;
  static PackageRepository from_json(const nlohmann::json& j);

 private:
  std::map<std::pair<std::string, Version>, RepositoryEntry> entries_;
};

}  // namespace irsm::center
