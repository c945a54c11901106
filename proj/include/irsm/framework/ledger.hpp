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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "irsm/core/manifest.hpp"
#include "irsm/core/time.hpp"

namespace irsm::framework {

enum class Resource { kCpu, kRam, kDisk, kBandwidthUp, kBandwidthV2i };
inline constexpr std::size_t kResourceCount = 5;

std::string_view to_string(Resource r);
std::uint64_t quota_for(const ResourceQuota& q, Resource r);

enum class DenyReason { kOwnQuota, kCapacity, kReservedShare, kNotActive };
std::string_view to_string(DenyReason r);

struct AcquireResult {
  bool granted = false;
  DenyReason reason = DenyReason::kOwnQuota;  // meaningful when !granted

  static AcquireResult Granted() { return {true, {}}; }
  static AcquireResult Denied(DenyReason r) { return {false, r}; }
  bool operator==(const AcquireResult&) const = default;
};

using Capacities = std::array<std::uint64_t, kResourceCount>;

// Station-wide resource accounting shared by the function framework and the
// management framework. Non-management principals together never hold more
// than (1 - reserved) of any capacity. CPU grants are per scheduling tick and
// lapse when the tick rolls over.
class ResourceLedger {
 public:
  explicit ResourceLedger(Capacities capacity, std::uint32_t reserved_permille = 100,
                          SimDuration cpu_tick = millis(100));

  AcquireResult try_acquire(const std::string& principal, bool management, const ResourceQuota& quota,
                            Resource resource, std::uint64_t amount, SimTime now);
  // Releases up to what the principal holds.
  void release(const std::string& principal, Resource resource, std::uint64_t amount);
  void release_all(const std::string& principal);

  std::uint64_t usage(const std::string& principal, Resource resource) const;
  std::uint64_t total(Resource resource) const;
  std::uint64_t non_management_total(Resource resource) const;
  std::uint64_t capacity(Resource resource) const { return capacity_[idx(resource)]; }
  std::uint32_t reserved_permille() const { return reserved_permille_; }

  // Largest amount a non-management principal could still be granted,
  // ignoring its own quota.
  std::uint64_t free_for_functions(Resource resource) const;

  // Cumulative grants and releases, for conservation checks.
  std::uint64_t granted_total(Resource resource) const { return granted_[idx(resource)]; }
  std::uint64_t released_total(Resource resource) const { return released_[idx(resource)]; }

 private:
  struct Holder {
    bool management = false;
    std::array<std::uint64_t, kResourceCount> used{};
  };
  static std::size_t idx(Resource r) { return static_cast<std::size_t>(r); }
  void roll_cpu_tick(SimTime now);

  Capacities capacity_;
  std::uint32_t reserved_permille_;
  SimDuration cpu_tick_;
  std::int64_t current_tick_ = 0;
  std::map<std::string, Holder> holders_;
  std::array<std::uint64_t, kResourceCount> granted_{};
  std::array<std::uint64_t, kResourceCount> released_{};
};

}  // namespace irsm::framework
