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

#include "irsm/core/archive.hpp"
#include "irsm/framework/ledger.hpp"

namespace irsm::agent {

enum class InstallError { kNone, kMalformedArchive, kDigestMismatch, kMissingDependency, kDiskQuotaExceeded };
std::string_view to_string(InstallError e);

struct InstallResult {
  InstallError error = InstallError::kNone;
  std::string detail;
  bool unchanged = false;  // identical package was already present
  PackageManifest manifest;

  bool ok() const { return error == InstallError::kNone; }
};

// The station's package store: payloads unpacked under name/version/path,
// plus the archives they came from for later reinstalls. Disk is drawn from
// the station ledger under the principal "pkg:<name>".
class PackageRoot {
 public:
  explicit PackageRoot(framework::ResourceLedger& ledger) : ledger_(ledger) {}

  // Nothing is written unless every check passes. Dependencies are checked
  // against `installed`; fetching them is the center's job.
  InstallResult install_package(std::string_view archive, const std::map<std::string, Version>& installed,
                                SimTime now);
  void remove(const std::string& name);
  void wipe();

  bool contains(const std::string& name) const { return packages_.contains(name); }
  const PackageManifest* manifest(const std::string& name) const;
  std::optional<std::string> cached_archive(const std::string& name, const Version& version) const;

  // "name/version/path" -> bytes.
  std::map<std::string, std::string> files() const;
  std::uint64_t disk_used() const;
  // Every stored payload still hashes to its manifest digest.
  bool verify() const;

 private:
  struct Package {
    PackageManifest manifest;
    PayloadFiles payload;
    std::uint64_t disk = 0;
  };

  framework::ResourceLedger& ledger_;
  std::map<std::string, Package> packages_;
  std::map<std::pair<std::string, Version>, std::string> cache_;
};

}  // namespace irsm::agent
