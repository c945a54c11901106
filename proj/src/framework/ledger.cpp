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

#include "irsm/framework/ledger.hpp"

#include <algorithm>

namespace irsm::framework {

std::string_view to_string(Resource r) {
  switch (r) {
    case Resource::kCpu: return "CPU";
    case Resource::kRam: return "RAM";
    case Resource::kDisk: return "DISK";
    case Resource::kBandwidthUp: return "BANDWIDTH_UP";
    case Resource::kBandwidthV2i: return "BANDWIDTH_V2I";
  }
  return "?";
}

std::string_view to_string(DenyReason r) {
  switch (r) {
    case DenyReason::kOwnQuota: return "OwnQuota";
    case DenyReason::kCapacity: return "Capacity";
    case DenyReason::kReservedShare: return "ReservedShare";
    case DenyReason::kNotActive: return "NotActive";
  }
  return "?";
}

std::uint64_t quota_for(const ResourceQuota& q, Resource r) {
  switch (r) {
    case Resource::kCpu: return q.cpu_share;
    case Resource::kRam: return q.ram;
    case Resource::kDisk: return q.disk;
    case Resource::kBandwidthUp: return q.bandwidth_up;
    case Resource::kBandwidthV2i: return q.bandwidth_v2i;
  }
  return 0;
}

ResourceLedger::ResourceLedger(Capacities capacity, std::uint32_t reserved_permille, SimDuration cpu_tick)
    : capacity_(capacity), reserved_permille_(std::min<std::uint32_t>(reserved_permille, 1000)), cpu_tick_(cpu_tick) {}

void ResourceLedger::roll_cpu_tick(SimTime now) {
  const std::int64_t tick = now.time_since_epoch() / cpu_tick_;
  if (tick == current_tick_) return;
  current_tick_ = tick;
  for (auto& [_, h] : holders_) {
    released_[idx(Resource::kCpu)] += h.used[idx(Resource::kCpu)];
    h.used[idx(Resource::kCpu)] = 0;
  }
}

AcquireResult ResourceLedger::try_acquire(const std::string& principal, bool management, const ResourceQuota& quota,
                                          Resource resource, std::uint64_t amount, SimTime now) {
  if (resource == Resource::kCpu) roll_cpu_tick(now);
  const std::size_t r = idx(resource);
  const std::uint64_t held = usage(principal, resource);
  if (held + amount > quota_for(quota, resource)) return AcquireResult::Denied(DenyReason::kOwnQuota);
  if (total(resource) + amount > capacity_[r]) return AcquireResult::Denied(DenyReason::kCapacity);
  if (!management) {
    // (non_mgmt + amount) <= (1 - reserved) * capacity, kept in integers.
    const unsigned __int128 lhs = static_cast<unsigned __int128>(non_management_total(resource) + amount) * 1000;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(capacity_[r]) * (1000 - reserved_permille_);
    if (lhs > rhs) return AcquireResult::Denied(DenyReason::kReservedShare);
  }
  auto& h = holders_[principal];
  h.management = management;
  h.used[r] += amount;
  granted_[r] += amount;
  return AcquireResult::Granted();
}

void ResourceLedger::release(const std::string& principal, Resource resource, std::uint64_t amount) {
  auto it = holders_.find(principal);
  if (it == holders_.end()) return;
  auto& used = it->second.used[idx(resource)];
  const std::uint64_t n = std::min(used, amount);
  used -= n;
  released_[idx(resource)] += n;
}

void ResourceLedger::release_all(const std::string& principal) {
  auto it = holders_.find(principal);
  if (it == holders_.end()) return;
  for (std::size_t r = 0; r < kResourceCount; ++r) {
    released_[r] += it->second.used[r];
    it->second.used[r] = 0;
  }
}

std::uint64_t ResourceLedger::usage(const std::string& principal, Resource resource) const {
  auto it = holders_.find(principal);
  return it == holders_.end() ? 0 : it->second.used[idx(resource)];
}

std::uint64_t ResourceLedger::total(Resource resource) const {
  std::uint64_t sum = 0;
  for (const auto& [_, h] : holders_) sum += h.used[idx(resource)];
  return sum;
}

std::uint64_t ResourceLedger::non_management_total(Resource resource) const {
  std::uint64_t sum = 0;
  for (const auto& [_, h] : holders_) {
    if (!h.management) sum += h.used[idx(resource)];
  }
  return sum;
}

std::uint64_t ResourceLedger::free_for_functions(Resource resource) const {
  const std::size_t r = idx(resource);
  const std::uint64_t share_cap = capacity_[r] * (1000 - reserved_permille_) / 1000;
  const std::uint64_t used_fn = non_management_total(resource);
  const std::uint64_t by_share = share_cap > used_fn ? share_cap - used_fn : 0;
  const std::uint64_t used_all = total(resource);
  const std::uint64_t by_capacity = capacity_[r] > used_all ? capacity_[r] - used_all : 0;
  return std::min(by_share, by_capacity);
}

}  // namespace irsm::framework
