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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "irsm/core/time.hpp"

namespace irsm::netsim {

// Line-oriented event trace: "t=<seconds> EVENT <kind> <attrs>".
class Trace {
 public:
  void record(SimTime at, std::string_view kind, std::string_view attrs = {});

  const std::vector<std::string>& lines() const { return lines_; }

  // SHA-256 over every line, each terminated by '\n'.
  std::string digest() const;

  // All lines followed by "digest <hex>".
  void write(std::ostream& out) const;

  void set_enabled(bool on) { enabled_ = on; }

 private:
  std::vector<std::string> lines_;
  bool enabled_ = true;
};

struct TraceSummary {
  std::size_t events = 0;
  std::string recorded_digest;
  std::string computed_digest;
  std::vector<std::pair<std::string, std::size_t>> counts_by_kind;
  double last_time = 0.0;

  bool digest_ok() const { return !recorded_digest.empty() && recorded_digest == computed_digest; }
};

// Parses a trace written by Trace::write.
TraceSummary summarize_trace(std::istream& in);

}  // namespace irsm::netsim
