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
#include <map>
#include <string>
#include <vector>

namespace irsm::framework {

struct Contender {
  std::string name;
  int priority = 0;
  std::uint64_t request = 0;
  // Remaining own quota; the grant never exceeds it.
  std::uint64_t cap = 0;
};

// Priority weight used for proportional splits.
constexpr std::uint64_t priority_weight(int priority) { return static_cast<std::uint64_t>(priority) + 1; }

// Splits `amount` over `names` proportionally to `weights` with largest-remainder
// rounding (ties by name ascending). The parts sum to `amount` exactly.
std::map<std::string, std::uint64_t> largest_remainder_split(std::uint64_t amount,
                                                             const std::map<std::string, std::uint64_t>& weights);

// Weighted-fair allocation of `free_capacity`: each contender's share is
// proportional to its priority weight, capped by min(request, cap); capacity
// freed by capped contenders is redistributed once over the rest.
std::map<std::string, std::uint64_t> weighted_fair_allocation(std::uint64_t free_capacity,
                                                              const std::vector<Contender>& contenders);

}  // namespace irsm::framework
