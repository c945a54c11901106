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

#include "irsm/netsim/clock.hpp"

#include "irsm/core/error.hpp"

namespace irsm::netsim {

std::uint64_t VirtualClock::schedule(SimTime at, std::string kind, Task task) {
  if (at < now_) {
    throw Error(ErrorCode::kInvalidArgument,
                "event '" + kind + "' scheduled in the past at t=" + format_seconds(at));
  }
  const std::uint64_t seq = next_sequence_++;
  queue_.push(Entry{at, seq, std::move(kind), std::move(task)});
  return seq;
}

std::uint64_t VirtualClock::schedule_after(SimDuration delay, std::string kind, Task task) {
  return schedule(now_ + delay, std::move(kind), std::move(task));
}

ExecutedEvent VirtualClock::run_top() {
  // priority_queue::top() is const; moving the task out requires a copy of the entry.
  Entry e = queue_.top();
  queue_.pop();
  now_ = e.at;
  ++executed_;
  if (e.task) e.task();
  return ExecutedEvent{e.at, e.sequence, std::move(e.kind)};
}

std::vector<ExecutedEvent> VirtualClock::advance(SimTime until) {
  std::vector<ExecutedEvent> out;
  while (!queue_.empty() && queue_.top().at <= until) out.push_back(run_top());
  if (until > now_) now_ = until;
  return out;
}

bool VirtualClock::step() {
  if (queue_.empty()) return false;
  run_top();
  return true;
}

}  // namespace irsm::netsim
