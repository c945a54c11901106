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

#include "irsm/core/time.hpp"

#include <cmath>
#include <cstdio>

namespace irsm {

SimDuration seconds_f(double s) {
  return SimDuration{static_cast<std::int64_t>(std::llround(s * 1e6))};
}

double to_seconds(SimTime t) { return to_seconds(t.time_since_epoch()); }

double to_seconds(SimDuration d) { return static_cast<double>(d.count()) / 1e6; }

std::string format_seconds(SimTime t) {
  const std::int64_t us = micros(t);
  const std::int64_t whole = us / 1'000'000;
  const std::int64_t frac = std::llabs(us % 1'000'000);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", (us < 0 && whole == 0) ? "-" : "",
                static_cast<long long>(whole), static_cast<long long>(frac));
  return buf;
}

std::string iso_timestamp(SimTime t) {
  const std::int64_t us = micros(t);
  const std::int64_t total_ms = us / 1000;
  const std::int64_t ms = total_ms % 1000;
  std::int64_t secs = total_ms / 1000;
  const std::int64_t s = secs % 60;
  secs /= 60;
  const std::int64_t m = secs % 60;
  secs /= 60;
  const std::int64_t h = secs % 24;
  const std::int64_t days = secs / 24;
  // Civil date from day count (Howard Hinnant's algorithm).
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::int64_t mo = mp < 10 ? mp + 3 : mp - 9;
  const std::int64_t y = yoe + era * 400 + (mo <= 2 ? 1 : 0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04lld-%02lld-%02lldT%02lld:%02lld:%02lld.%03lldZ",
                static_cast<long long>(y), static_cast<long long>(mo), static_cast<long long>(d),
                static_cast<long long>(h), static_cast<long long>(m), static_cast<long long>(s),
                static_cast<long long>(ms));
  return buf;
}

}  // namespace irsm
