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
#include <optional>
#include <string>
#include <vector>

#include "irsm/core/time.hpp"

namespace irsm {

// Access technology between a station and the center, reduced to the three
// numbers the fabric needs.
struct LinkProfile {
  std::string name;
  std::uint64_t bandwidth = 0;  // bytes / second
  SimDuration delay{};          // one-way
  double loss_rate = 0.0;       // per frame, [0, 1)

  bool operator==(const LinkProfile&) const = default;

  bool valid() const { return bandwidth > 0 && delay.count() >= 0 && loss_rate >= 0.0 && loss_rate < 1.0; }
};

// FIBER, XDSL, UMTS, GPRS in that order.
std::vector<LinkProfile> builtin_link_profiles();

std::optional<LinkProfile> find_builtin_profile(const std::string& name);

}  // namespace irsm
