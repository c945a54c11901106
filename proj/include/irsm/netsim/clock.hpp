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

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "irsm/core/time.hpp"

namespace irsm::netsim {

struct ExecutedEvent {
  SimTime at;
  std::uint64_t sequence;
  std::string kind;

  bool operator==(const ExecutedEvent&) const = default;
};

// Discrete-event scheduler. Events run in (time, insertion sequence) order;
// nothing runs before its scheduled time and `now` never decreases.
class VirtualClock {
 public:
  using Task = std::function<void()>;

  SimTime now() const { return now_; }

  // Throws Error(kInvalidArgument) when `at` lies in the past.
  std::uint64_t schedule(SimTime at, std::string kind, Task task);
  std::uint64_t schedule_after(SimDuration delay, std::string kind, Task task);

  // Runs every event with time <= until, including ones scheduled while
  // running, then sets now = until.
  std::vector<ExecutedEvent> advance(SimTime until);

  // Runs the earliest event, if any.
  bool step();

  std::size_t pending() const { return queue_.size(); }
  std::uint64_t executed_count() const { return executed_; }

 private:
  struct Entry {
    SimTime at;
    std::uint64_t sequence;
    std::string kind;
    Task task;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.at != b.at ? a.at > b.at : a.sequence > b.sequence;
    }
  };

  ExecutedEvent run_top();

  SimTime now_{};
  std::uint64_t next_sequence_ = 0;
  std::uint64_t executed_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
};

}  // namespace irsm::netsim
