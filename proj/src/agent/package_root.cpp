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

#include "irsm/agent/package_root.hpp"

#include "irsm/core/error.hpp"

namespace irsm::agent {

std::string_view to_string(InstallError e) {
  switch (e) {
    case InstallError::kNone: return "OK";
    case InstallError::kMalformedArchive: return "MalformedArchive";
    case InstallError::kDigestMismatch: return "DigestMismatch";
    case InstallError::kMissingDependency: return "MissingDependency";
    case InstallError::kDiskQuotaExceeded: return "DiskQuotaExceeded";
  }
  return "?";
}

InstallResult PackageRoot::install_package(std::string_view archive, const std::map<std::string, Version>& installed,
                                           SimTime now) {
  InstallResult r;
  PackageArchive pkg;
  try {
    pkg = read_package_archive(archive);
  } catch (const Error& e) {
    r.error = InstallError::kMalformedArchive;
    r.detail = e.detail();
    return r;
  }
  r.manifest = pkg.manifest;
  const auto& m = pkg.manifest;
  if (payload_digest(pkg.payload) != m.payload_digest) {
    r.error = InstallError::kDigestMismatch;
    r.detail = m.name + " " + m.version.to_string();
    return r;
  }
  if (auto it = packages_.find(m.name);
      it != packages_.end() && it->second.manifest.version == m.version &&
      it->second.manifest.payload_digest == m.payload_digest) {
    r.unchanged = true;
    return r;
  }
  for (const auto& dep : m.depends) {
    auto it = installed.find(dep.name);
    if (it == installed.end() || it->second < dep.min_version) {
      r.error = InstallError::kMissingDependency;
      r.detail = dep.name;
      return r;
    }
  }
  const std::uint64_t size = pkg.payload_size();
  if (size > m.quota.disk) {
    r.error = InstallError::kDiskQuotaExceeded;
    r.detail = std::to_string(size) + " > quota " + std::to_string(m.quota.disk);
    return r;
  }
  const std::string principal = "pkg:" + m.name;
  std::uint64_t previous = 0;
  if (auto it = packages_.find(m.name); it != packages_.end()) previous = it->second.disk;
  ledger_.release(principal, framework::Resource::kDisk, previous);
  if (size > 0) {
    auto grant = ledger_.try_acquire(principal, m.pkg_type == PackageType::kManagement, m.quota,
                                     framework::Resource::kDisk, size, now);
    if (!grant.granted) {
      if (previous > 0) {
        ledger_.try_acquire(principal, m.pkg_type == PackageType::kManagement, m.quota,
                            framework::Resource::kDisk, previous, now);
      }
      r.error = InstallError::kDiskQuotaExceeded;
      r.detail = std::string("station disk: ") + std::string(framework::to_string(grant.reason));
      return r;
    }
  }
  packages_[m.name] = Package{m, std::move(pkg.payload), size};
  cache_[{m.name, m.version}] = std::string(archive);
  return r;
}

void PackageRoot::remove(const std::string& name) {
  auto it = packages_.find(name);
  if (it == packages_.end()) return;
  ledger_.release("pkg:" + name, framework::Resource::kDisk, it->second.disk);
  packages_.erase(it);
}

void PackageRoot::wipe() {
  while (!packages_.empty()) remove(packages_.begin()->first);
  cache_.clear();
}

const PackageManifest* PackageRoot::manifest(const std::string& name) const {
  auto it = packages_.find(name);
  return it == packages_.end() ? nullptr : &it->second.manifest;
}

std::optional<std::string> PackageRoot::cached_archive(const std::string& name, const Version& version) const {
  auto it = cache_.find({name, version});
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::string> PackageRoot::files() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, p] : packages_) {
    for (const auto& [path, data] : p.payload) out[name + "/" + p.manifest.version.to_string() + "/" + path] = data;
  }
  return out;
}

std::uint64_t PackageRoot::disk_used() const {
  std::uint64_t n = 0;
  for (const auto& [_, p] : packages_) n += p.disk;
  return n;
}

bool PackageRoot::verify() const {
  for (const auto& [_, p] : packages_) {
    if (payload_digest(p.payload) != p.manifest.payload_digest) return false;
  }
  return true;
}

}  // namespace irsm::agent
