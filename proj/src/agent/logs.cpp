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

#include "irsm/agent/logs.hpp"

#include <cstdio>
#include <map>

namespace irsm::agent {

std::string format_log_line(const LogLine& l) {
  return iso_timestamp(l.at) + " " + l.level + " " + l.subject + ": " + l.message;
}

std::optional<LogLine> parse_log_line(const std::string& text) {
  // Timestamps are YYYY-MM-DDTHH:MM:SS.mmmZ.
  const auto sp1 = text.find(' ');
  if (sp1 == std::string::npos) return std::nullopt;
  const auto sp2 = text.find(' ', sp1 + 1);
  if (sp2 == std::string::npos) return std::nullopt;
  const auto colon = text.find(": ", sp2 + 1);
  if (colon == std::string::npos) return std::nullopt;
  const std::string ts = text.substr(0, sp1);
  int y, mo, d, h, mi, s;
  long ms = 0;
  if (std::sscanf(ts.c_str(), "%d-%d-%dT%d:%d:%d.%3ldZ", &y, &mo, &d, &h, &mi, &s, &ms) < 6) return std::nullopt;
  // Days from civil (H. Hinnant).
  const int yy = y - (mo <= 2);
  const int era = (yy >= 0 ? yy : yy - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(yy - era * 400);
  const unsigned doy = (153 * static_cast<unsigned>(mo + (mo > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  const std::int64_t days = static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
  const std::int64_t total_us = (days * 86400 + h * 3600 + mi * 60 + s) * 1'000'000 + ms * 1000;
  LogLine l;
  l.at = from_micros(total_us);
  l.level = text.substr(sp1 + 1, sp2 - sp1 - 1);
  l.subject = text.substr(sp2 + 1, colon - sp2 - 1);
  l.message = text.substr(colon + 2);
  return l;
}

std::vector<LogRule> default_log_rules() {
  return {
      LogRule{"retry-storm", "", "retry", 10, seconds(60), true, FaultLayer::kFunction, Severity::kWarning},
      LogRule{"error-burst", "ERROR", "", 3, seconds(60), true, FaultLayer::kFunction, Severity::kError},
      LogRule{"timeouts", "", "timeout", 5, seconds(120), false, FaultLayer::kNetwork, Severity::kWarning},
  };
}

std::vector<FaultEvent> analyze_logs(const std::vector<LogLine>& lines, SimTime now, const std::string& station,
                                     const std::vector<LogRule>& rules) {
  std::vector<FaultEvent> out;
  for (const auto& rule : rules) {
    std::map<std::string, int> counts;
    for (const auto& l : lines) {
      if (l.at > now || l.at <= now - rule.window) continue;
      if (!rule.level.empty() && l.level != rule.level) continue;
      if (!rule.substring.empty() && l.message.find(rule.substring) == std::string::npos) continue;
      ++counts[rule.per_subject ? l.subject : std::string("*")];
    }
    for (const auto& [subject, n] : counts) {
      if (n < rule.threshold) continue;
      FaultEvent e;
      e.station = station;
      e.layer = rule.layer;
      e.severity = rule.severity;
      e.subject = subject;
      e.occurred_at = now;
      e.detail = rule.name + ": " + std::to_string(n) + " lines";
      out.push_back(std::move(e));
    }
  }
  return out;
}

void LocalLog::append(LogLine line) {
  lines_.push_back(std::move(line));
  while (lines_.size() > capacity_) lines_.pop_front();
}

std::vector<LogLine> LocalLog::since(SimTime t) const {
  std::vector<LogLine> out;
  for (const auto& l : lines_) {
    if (l.at > t) out.push_back(l);
  }
  return out;
}

std::vector<std::string> LocalLog::render() const {
  std::vector<std::string> out;
  for (const auto& l : lines_) out.push_back(format_log_line(l));
  return out;
}

}  // namespace irsm::agent
