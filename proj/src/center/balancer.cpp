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

#include "irsm/center/balancer.hpp"

#include <algorithm>

#include "irsm/core/error.hpp"

namespace irsm::center {

std::string_view to_string(WorkerHealth h) { return h == WorkerHealth::kHealthy ? "HEALTHY" : "DOWN"; }

WorkerPool::WorkerPool(std::vector<std::string> worker_ids)
    : ids_(std::move(worker_ids)), health_(ids_.size(), WorkerHealth::kHealthy) {
  for (const auto& id : ids_) {
    if (!counts_.emplace(id, 0).second) throw Error(ErrorCode::kInvalidArgument, "duplicate worker " + id);
  }
}

const std::string& WorkerPool::dispatch() {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const std::size_t idx = (cursor_ + i) % ids_.size();
    if (health_[idx] == WorkerHealth::kHealthy) {
      cursor_ = (idx + 1) % ids_.size();
      ++counts_[ids_[idx]];
      return ids_[idx];
    }
  }
  throw Error(ErrorCode::kNoWorkerAvailable, "all " + std::to_string(ids_.size()) + " workers are down");
}

std::size_t WorkerPool::index_of(const std::string& worker) const {
  auto it = std::find(ids_.begin(), ids_.end(), worker);
  if (it == ids_.end()) throw Error(ErrorCode::kUnknownWorker, worker);
  return static_cast<std::size_t>(it - ids_.begin());
}

void WorkerPool::set_health(const std::string& worker, WorkerHealth health) { health_[index_of(worker)] = health; }

WorkerHealth WorkerPool::health(const std::string& worker) const { return health_[index_of(worker)]; }

std::size_t WorkerPool::healthy_count() const {
  return static_cast<std::size_t>(std::count(health_.begin(), health_.end(), WorkerHealth::kHealthy));
}

}  // namespace irsm::center
