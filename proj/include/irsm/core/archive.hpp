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
#include <string_view>
#include <vector>

#include "irsm/core/manifest.hpp"

namespace irsm {

struct ZipEntry {
  std::string path;
  std::string data;

  bool operator==(const ZipEntry&) const = default;
};

// Minimal PKZIP container: writes stored entries, reads stored or deflated
// ones. Throws Error(kMalformedArchive) on structural or CRC errors.
std::string zip_write(const std::vector<ZipEntry>& entries);
std::vector<ZipEntry> zip_read(std::string_view bytes);

// Payload files keyed by path relative to `payload/`.
using PayloadFiles = std::map<std::string, std::string>;

struct PackageArchive {
  PackageManifest manifest;
  PayloadFiles payload;

  std::uint64_t payload_size() const;
  bool operator==(const PackageArchive&) const = default;
};

// SHA-256 over the payload bytes concatenated in ascending path order.
std::string payload_digest(const PayloadFiles& files);

// manifest.json at the root, payload files under payload/.
std::string build_package_archive(const PackageManifest& manifest, const PayloadFiles& payload);

// Does not check payload_digest against the payload; callers decide.
PackageArchive read_package_archive(std::string_view bytes);

}  // namespace irsm
