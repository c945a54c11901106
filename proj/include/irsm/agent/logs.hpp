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

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "irsm/core/model.hpp"

namespace irsm::agent {

struct LogLine {
  SimTime at{};
  std::string level;  // INFO, WARN, ERROR
  std::string subject;
  std::string message;

  bool operator==(const LogLine&) const = default;
};

// "ISO-timestamp LEVEL subject: message"
std::string format_log_line(const LogLine& l);
std::optional<LogLine> parse_log_line(const std::string& text);

struct LogRule {
  std::string name;
  std::string level;       // empty matches any level
  std::string substring;   // empty matches any message
  int threshold = 1;       // matching lines needed inside the window
  SimDuration window = seconds(60);
  bool per_subject = true; // count per subject, or across the whole log
  FaultLayer layer = FaultLayer::kFunction;
  Severity severity = Severity::kWarning;

  bool operator==(const LogRule&) const = default;
};

std::vector<LogRule> default_log_rules();

// Pure scan of the lines with at in (now - rule.window, now]. One event per
// matching rule and subject; subject "*" when the rule counts log-wide.
std::vector<FaultEvent> analyze_logs(const std::vector<LogLine>& lines, SimTime now, const std::string& station,
                                     const std::vector<LogRule>& rules = default_log_rules());

// Bounded in-memory log.
class LocalLog {
 public:
  explicit LocalLog(std::size_t capacity = 2000) : capacity_(capacity) {}

  void append(LogLine line);
  std::vector<LogLine> since(SimTime t) const;
  std::vector<LogLine> all() const { return {lines_.begin(), lines_.end()}; }
  std::vector<std::string> render() const;
  std::size_t size() const { return lines_.size(); }

 private:
  std::size_t capacity_;
  std::deque<LogLine> lines_;
};

}  // namespace irsm::agent
