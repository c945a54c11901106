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

#include "irsm/agent/checks.hpp"

#include <cstdlib>

namespace irsm::agent {

namespace {

LocalCheckResult result(CheckName c, bool pass, std::string detail) {
  return LocalCheckResult{c, pass ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)};
}

}  // namespace

std::vector<LocalCheckResult> local_verify(const StationProbe& p, SimTime now) {
  std::vector<LocalCheckResult> out;
  out.push_back(result(CheckName::kDiskSpace, p.disk_used <= p.disk_capacity,
                       std::to_string(p.disk_used) + "/" + std::to_string(p.disk_capacity) + " bytes"));
  const auto skew = p.clock_skew < SimDuration::zero() ? -p.clock_skew : p.clock_skew;
  out.push_back(result(CheckName::kClockSanity, skew <= kMaxClockSkew,
                       "skew " + std::to_string(skew.count()) + " us"));
  out.push_back(result(CheckName::kConfigDigest, p.config_digest_ok, p.config_digest_ok ? "" : "digest mismatch"));
  out.push_back(result(CheckName::kFrameworkAlive, p.framework_alive, p.framework_alive ? "" : "function framework down"));
  const bool fresh = p.last_data_at && now - *p.last_data_at <= 2 * p.data_interval;
  out.push_back(result(CheckName::kDataCollectionFresh, fresh,
                       p.last_data_at ? "last sample " + format_seconds(*p.last_data_at) : "no samples"));
  out.push_back(result(CheckName::kLinkUp, p.link_up, p.link_up ? "" : "center link down"));
  return out;
}

FaultLayer check_layer(CheckName check) {
  switch (check) {
    case CheckName::kDiskSpace:
    case CheckName::kClockSanity: return FaultLayer::kOs;
    case CheckName::kConfigDigest:
    case CheckName::kFrameworkAlive: return FaultLayer::kFramework;
    case CheckName::kDataCollectionFresh: return FaultLayer::kDataCollection;
    case CheckName::kLinkUp: return FaultLayer::kNetwork;
  }
  return FaultLayer::kOs;
}

Severity check_severity(CheckName check) {
  switch (check) {
    case CheckName::kDiskSpace: return Severity::kError;
    case CheckName::kClockSanity: return Severity::kWarning;
    case CheckName::kConfigDigest: return Severity::kError;
    case CheckName::kFrameworkAlive: return Severity::kCritical;
    case CheckName::kDataCollectionFresh: return Severity::kWarning;
    case CheckName::kLinkUp: return Severity::kError;
  }
  return Severity::kError;
}

std::optional<FaultEvent> check_fault(const LocalCheckResult& r, const std::string& station, SimTime now) {
  if (r.status == CheckStatus::kPass) return std::nullopt;
  FaultEvent e;
  e.station = station;
  e.layer = check_layer(r.check);
  e.severity = check_severity(r.check);
  e.subject = std::string(to_string(r.check));
  e.occurred_at = now;
  e.detail = r.detail;
  return e;
}

}  // namespace irsm::agent
