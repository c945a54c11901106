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

#include "irsm/agent/ladder.hpp"

#include <algorithm>

namespace irsm::agent {

namespace {
constexpr int kTopRung = static_cast<int>(StrategyRung::kEscalateToCenter);
}

StrategyRung minimum_rung(FaultLayer layer) {
  switch (layer) {
    case FaultLayer::kFunction: return StrategyRung::kRestartFunction;
    case FaultLayer::kFramework:
    case FaultLayer::kDataCollection: return StrategyRung::kRestartFramework;
    case FaultLayer::kOs:
    case FaultLayer::kNetwork: return StrategyRung::kRebootAgent;
  }
  return StrategyRung::kRestartFunction;
}

StrategyRung StrategyLadder::peek(const std::string& subject, FaultLayer layer, SimTime now) const {
  int rung = static_cast<int>(minimum_rung(layer));
  if (auto it = subjects_.find(subject); it != subjects_.end() && now - it->second.last_fault <= window_) {
    rung = std::max(rung, it->second.next_rung);
  }
  return static_cast<StrategyRung>(std::min(rung, kTopRung));
}

StrategyRung StrategyLadder::next(const std::string& subject, FaultLayer layer, SimTime now) {
  const StrategyRung rung = peek(subject, layer, now);
  State& s = subjects_[subject];
  s.next_rung = std::min(static_cast<int>(rung) + 1, kTopRung);
  s.last_fault = now;
  return rung;
}

}  // namespace irsm::agent
