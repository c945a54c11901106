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

#include "irsm/netsim/trace.hpp"

#include <istream>
#include <map>
#include <ostream>

#include "irsm/core/digest.hpp"

namespace irsm::netsim {

void Trace::record(SimTime at, std::string_view kind, std::string_view attrs) {
  if (!enabled_) return;
  std::string line = "t=" + format_seconds(at) + " EVENT ";
  line.append(kind);
  if (!attrs.empty()) {
    line.push_back(' ');
    line.append(attrs);
  }
  lines_.push_back(std::move(line));
}

std::string Trace::digest() const {
  Sha256 h;
  for (const auto& l : lines_) {
    h.update(l);
    h.update("\n");
  }
  return h.hex();
}

void Trace::write(std::ostream& out) const {
  for (const auto& l : lines_) out << l << '\n';
  out << "digest " << digest() << '\n';
}

TraceSummary summarize_trace(std::istream& in) {
  TraceSummary s;
  Sha256 h;
  std::map<std::string, std::size_t> counts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("digest ")) {
      s.recorded_digest = line.substr(7);
      break;
    }
    h.update(line);
    h.update("\n");
    ++s.events;
    const auto ev = line.find(" EVENT ");
    if (ev == std::string::npos) continue;
    if (line.starts_with("t=")) s.last_time = std::stod(line.substr(2, ev - 2));
    const auto kind_start = ev + 7;
    const auto kind_end = line.find(' ', kind_start);
    ++counts[line.substr(kind_start, kind_end == std::string::npos ? std::string::npos : kind_end - kind_start)];
  }
  s.computed_digest = h.hex();
  s.counts_by_kind.assign(counts.begin(), counts.end());
  return s;
}

}  // namespace irsm::netsim
