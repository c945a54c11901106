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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "irsm/core/model.hpp"

namespace irsm::netsim {

enum class EnqueueOutcome { kAccepted, kExpired, kCapacity, kDuplicate };

std::string_view to_string(EnqueueOutcome o);

struct EnqueueResult {
  EnqueueOutcome outcome = EnqueueOutcome::kAccepted;
  std::optional<std::string> evicted;  // msg_id pushed out to make room

  bool accepted() const { return outcome == EnqueueOutcome::kAccepted; }
};

struct SfEntry {
  V2IMessage message;
  int broadcasts_done = 0;
  SimTime next_broadcast_at{};
};

struct BroadcastFrame {
  std::string msg_id;
  int priority = 0;
  int broadcast_number = 0;  // 1-based
  std::uint64_t size = 0;

  bool operator==(const BroadcastFrame&) const = default;
};

enum class RemovalReason { kRedundancyReached, kExpired };

struct Removal {
  std::string msg_id;
  RemovalReason reason = RemovalReason::kRedundancyReached;
  int broadcasts_done = 0;
  int redundancy = 0;

  bool under_redundancy() const { return broadcasts_done < redundancy; }
  bool operator==(const Removal&) const = default;
};

struct TickResult {
  std::vector<BroadcastFrame> broadcasts;
  std::vector<Removal> removed;
};

struct DistributionPolicy {
  SimDuration period = seconds(1);
  int max_frames_per_tick = 10;
};

// Frames the channel allows this tick: floor((1 - load) * max_frames).
int broadcast_budget(double channel_load, int max_frames_per_tick);

// Store-and-forward buffer for one station. Iteration order is priority
// descending, then expiry ascending, then msg_id ascending.
class SfBuffer {
 public:
  explicit SfBuffer(std::size_t capacity = 64, DistributionPolicy policy = {});

  // Rejects expired or duplicate messages. When full, evicts the
  // lowest-priority entry (latest expiry first) if it ranks below the newcomer.
  EnqueueResult enqueue(const V2IMessage& message, SimTime now);

  // Drops expired entries, then broadcasts eligible entries in buffer order
  // up to the budget. With no neighbours nothing is broadcast.
  TickResult distribution_tick(int neighbor_count, double channel_load, SimTime now);

  std::vector<SfEntry> entries() const;
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const DistributionPolicy& policy() const { return policy_; }

 private:
  using Key = std::tuple<int, SimTime, std::string>;  // (-priority, expiry, msg_id)
  static Key key_of(const V2IMessage& m) { return {-m.priority, m.expiry, m.msg_id}; }

  std::size_t capacity_;
  DistributionPolicy policy_;
  std::map<Key, SfEntry> entries_;
};

// Hands a center-originated V2I frame to the station's buffer. Center-side
// delivery has already completed; a rejection only produces a WARNING event
// for the station's own log.
std::optional<FaultEvent> bridge_center_to_v2i(SfBuffer& buffer, const nlohmann::json& frame,
                                               const std::string& station, SimTime now);

// Vehicle-originated message relayed through the same buffer path.
std::optional<FaultEvent> relay_vehicle_message(SfBuffer& buffer, V2IMessage message,
                                                const std::string& station, SimTime now);

}  // namespace irsm::netsim
