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

#include "irsm/framework/arbitration.hpp"

#include <algorithm>

namespace irsm::framework {

std::map<std::string, std::uint64_t> largest_remainder_split(std::uint64_t amount,
                                                             const std::map<std::string, std::uint64_t>& weights) {
  std::map<std::string, std::uint64_t> out;
  unsigned __int128 total_weight = 0;
  for (const auto& [_, w] : weights) total_weight += w;
  if (total_weight == 0) {
    for (const auto& [name, _] : weights) out[name] = 0;
    return out;
  }

  struct Remainder {
    unsigned __int128 value;
    const std::string* name;
  };
  std::vector<Remainder> remainders;
  std::uint64_t assigned = 0;
  for (const auto& [name, w] : weights) {
    const unsigned __int128 scaled = static_cast<unsigned __int128>(amount) * w;
    const auto floor_part = static_cast<std::uint64_t>(scaled / total_weight);
    out[name] = floor_part;
    assigned += floor_part;
    remainders.push_back({scaled % total_weight, &name});
  }
  std::stable_sort(remainders.begin(), remainders.end(), [](const Remainder& a, const Remainder& b) {
    return a.value != b.value ? a.value > b.value : *a.name < *b.name;
  });
  for (std::size_t i = 0; assigned < amount && i < remainders.size(); ++i, ++assigned) {
    ++out[*remainders[i].name];
  }
  return out;
}

std::map<std::string, std::uint64_t> weighted_fair_allocation(std::uint64_t free_capacity,
                                                              const std::vector<Contender>& contenders) {
  std::map<std::string, std::uint64_t> alloc;
  std::map<std::string, std::uint64_t> limit;
  std::map<std::string, std::uint64_t> weights;
  std::uint64_t demand = 0;
  for (const auto& c : contenders) {
    const std::uint64_t l = std::min(c.request, c.cap);
    alloc[c.name] = 0;
    if (l == 0) continue;
    limit[c.name] = l;
    weights[c.name] = priority_weight(c.priority);
    demand += l;
  }
  if (demand <= free_capacity) {
    for (const auto& [name, l] : limit) alloc[name] = l;
    return alloc;
  }

  std::uint64_t granted = 0;
  for (const auto& [name, share] : largest_remainder_split(free_capacity, weights)) {
    alloc[name] = std::min(share, limit[name]);
    granted += alloc[name];
  }

  // One redistribution pass over the contenders still below their limit.
  const std::uint64_t leftover = free_capacity - granted;
  std::map<std::string, std::uint64_t> hungry;
  for (const auto& [name, l] : limit) {
    if (alloc[name] < l) hungry[name] = weights[name];
  }
  if (leftover > 0 && !hungry.empty()) {
    for (const auto& [name, extra] : largest_remainder_split(leftover, hungry)) {
      alloc[name] += std::min(extra, limit[name] - alloc[name]);
    }
  }
  return alloc;
}

}  // namespace irsm::framework
