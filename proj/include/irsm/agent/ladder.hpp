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

#include <map>
#include <string>

#include "irsm/core/enums.hpp"
#include "irsm/core/time.hpp"

namespace irsm::agent {

// Cheapest rung that makes sense for a fault on this layer.
StrategyRung minimum_rung(FaultLayer layer);

// Per-subject escalation: each fault within the window moves one rung up,
// starting no lower than the layer's minimum; a quiet window starts over.
class StrategyLadder {
 public:
  explicit StrategyLadder(SimDuration window = std::chrono::minutes(10)) : window_(window) {}

  StrategyRung next(const std::string& subject, FaultLayer layer, SimTime now);

  // Rung the subject would get next, without recording a fault.
  StrategyRung peek(const std::string& subject, FaultLayer layer, SimTime now) const;

  void reset() { subjects_.clear(); }
  SimDuration window() const { return window_; }

 private:
  struct State {
    int next_rung = 0;
    SimTime last_fault{};
  };

  SimDuration window_;
  std::map<std::string, State> subjects_;
};

}  // namespace irsm::agent
