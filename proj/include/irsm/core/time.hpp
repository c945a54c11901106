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

#include <chrono>
#include <cstdint>
#include <string>

namespace irsm {

// Virtual time base shared by the whole simulation. Timestamps count
// microseconds since scenario start.
struct SimClock {
  using rep = std::int64_t;
  using period = std::micro;
  using duration = std::chrono::microseconds;
  using time_point = std::chrono::time_point<SimClock, duration>;
  static constexpr bool is_steady = true;
};

using SimDuration = SimClock::duration;
using SimTime = SimClock::time_point;

constexpr SimTime kSimEpoch{};

constexpr SimDuration seconds(std::int64_t s) { return std::chrono::seconds(s); }
constexpr SimDuration millis(std::int64_t ms) { return std::chrono::milliseconds(ms); }

SimDuration seconds_f(double s);
constexpr SimTime at(SimDuration since_epoch) { return SimTime{since_epoch}; }

constexpr std::int64_t micros(SimTime t) { return t.time_since_epoch().count(); }
constexpr SimTime from_micros(std::int64_t us) { return SimTime{SimDuration{us}}; }

double to_seconds(SimTime t);
double to_seconds(SimDuration d);

// "12.345000"
std::string format_seconds(SimTime t);

// "1970-01-01T00:00:12.345Z"; virtual time mapped onto the Unix epoch.
std::string iso_timestamp(SimTime t);

}  // namespace irsm
