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

#include <optional>
#include <vector>

#include "irsm/core/model.hpp"

namespace irsm::agent {

// Observable station condition the six local checks look at.
struct StationProbe {
  std::uint64_t disk_used = 0;
  std::uint64_t disk_capacity = 0;
  SimDuration clock_skew{};
  bool config_digest_ok = true;
  bool framework_alive = true;
  std::optional<SimTime> last_data_at;
  SimDuration data_interval = seconds(10);
  bool link_up = true;
};

inline constexpr SimDuration kMaxClockSkew = seconds(1);

// Runs all six checks in CheckName order at time `now`.
std::vector<LocalCheckResult> local_verify(const StationProbe& probe, SimTime now);

FaultLayer check_layer(CheckName check);
Severity check_severity(CheckName check);

// The fault a failed check raises; nullopt for a pass.
std::optional<FaultEvent> check_fault(const LocalCheckResult& r, const std::string& station, SimTime now);

}  // namespace irsm::agent
