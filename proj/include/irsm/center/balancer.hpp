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
#include <map>
#include <string>
#include <vector>

namespace irsm::center {

enum class WorkerHealth { kHealthy, kDown };
std::string_view to_string(WorkerHealth h);

// Round-robin dispatch over the healthy workers, in list order.
class WorkerPool {
 public:
  explicit WorkerPool(std::vector<std::string> worker_ids);

  // Throws Error(kNoWorkerAvailable) when every worker is down.
  const std::string& dispatch();

  // Throws Error(kUnknownWorker).
  void set_health(const std::string& worker, WorkerHealth health);
  WorkerHealth health(const std::string& worker) const;

  const std::vector<std::string>& workers() const { return ids_; }
  std::size_t healthy_count() const;
  // Dispatches per worker since construction.
  const std::map<std::string, std::uint64_t>& dispatch_counts() const { return counts_; }

 private:
  std::size_t index_of(const std::string& worker) const;

  std::vector<std::string> ids_;
  std::vector<WorkerHealth> health_;
  std::size_t cursor_ = 0;
  std::map<std::string, std::uint64_t> counts_;
};

}  // namespace irsm::center
