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

#include "irsm/netsim/sf_buffer.hpp"

#include <algorithm>
#include <cmath>

#include "irsm/core/error.hpp"

namespace irsm::netsim {

std::string_view to_string(EnqueueOutcome o) {
  switch (o) {
    case EnqueueOutcome::kAccepted: return "ACCEPTED";
    case EnqueueOutcome::kExpired: return "EXPIRED";
    case EnqueueOutcome::kCapacity: return "CAPACITY";
    case EnqueueOutcome::kDuplicate: return "DUPLICATE";
  }
  return "?";
}

int broadcast_budget(double channel_load, int max_frames_per_tick) {
  const double free = std::clamp(1.0 - channel_load, 0.0, 1.0);
  return static_cast<int>(std::floor(free * max_frames_per_tick + 1e-9));
}

SfBuffer::SfBuffer(std::size_t capacity, DistributionPolicy policy) : capacity_(capacity), policy_(policy) {}

EnqueueResult SfBuffer::enqueue(const V2IMessage& message, SimTime now) {
  if (message.size == 0 || message.redundancy < 1) {
    throw Error(ErrorCode::kInvalidArgument, "V2I message needs size > 0 and redundancy >= 1");
  }
  if (message.expiry <= now) return {EnqueueOutcome::kExpired, std::nullopt};
  for (const auto& [_, e] : entries_) {
    if (e.message.msg_id == message.msg_id) return {EnqueueOutcome::kDuplicate, std::nullopt};
  }

  EnqueueResult result;
  if (entries_.size() >= capacity_) {
    // Victim: lowest priority, latest expiry among those, highest msg_id last.
    auto victim = entries_.end();
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
      if (victim == entries_.end()) {
        victim = it;
        continue;
      }
      const auto& v = victim->second.message;
      const auto& c = it->second.message;
      if (c.priority < v.priority ||
          (c.priority == v.priority && (c.expiry > v.expiry || (c.expiry == v.expiry && c.msg_id > v.msg_id)))) {
        victim = it;
      }
    }
    if (victim == entries_.end() || victim->second.message.priority >= message.priority) {
      return {EnqueueOutcome::kCapacity, std::nullopt};
    }
    result.evicted = victim->second.message.msg_id;
    entries_.erase(victim);
  }
  entries_.emplace(key_of(message), SfEntry{message, 0, now});
  return result;
}

TickResult SfBuffer::distribution_tick(int neighbor_count, double channel_load, SimTime now) {
  TickResult out;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.message.expiry <= now) {
      out.removed.push_back(Removal{it->second.message.msg_id, RemovalReason::kExpired,
                                    it->second.broadcasts_done, it->second.message.redundancy});
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  if (neighbor_count <= 0) return out;

  int budget = broadcast_budget(channel_load, policy_.max_frames_per_tick);
  for (auto it = entries_.begin(); it != entries_.end() && budget > 0;) {
    auto& e = it->second;
    if (e.next_broadcast_at > now) {
      ++it;
      continue;
    }
    ++e.broadcasts_done;
    --budget;
    e.next_broadcast_at = now + policy_.period;
    out.broadcasts.push_back(
        BroadcastFrame{e.message.msg_id, e.message.priority, e.broadcasts_done, e.message.size});
    if (e.broadcasts_done >= e.message.redundancy) {
      out.removed.push_back(Removal{e.message.msg_id, RemovalReason::kRedundancyReached, e.broadcasts_done,
                                    e.message.redundancy});
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::vector<SfEntry> SfBuffer::entries() const {
  std::vector<SfEntry> out;
  out.reserve(entries_.size());
  for (const auto& [_, e] : entries_) out.push_back(e);
  return out;
}

namespace {

std::optional<FaultEvent> enqueue_or_warn(SfBuffer& buffer, const V2IMessage& m, const std::string& station,
                                          SimTime now) {
  const auto r = buffer.enqueue(m, now);
  if (r.accepted()) return std::nullopt;
  FaultEvent ev;
  ev.station = station;
  ev.layer = FaultLayer::kNetwork;
  ev.severity = Severity::kWarning;
  ev.subject = "v2i-buffer";
  ev.occurred_at = now;
  ev.detail = "message " + m.msg_id + " rejected: " + std::string(to_string(r.outcome));
  return ev;
}

}  // namespace

std::optional<FaultEvent> bridge_center_to_v2i(SfBuffer& buffer, const nlohmann::json& frame,
                                               const std::string& station, SimTime now) {
  V2IMessage m = frame.at("message").get<V2IMessage>();
  m.origin = MessageOrigin::kCenter;
  return enqueue_or_warn(buffer, m, station, now);
}

std::optional<FaultEvent> relay_vehicle_message(SfBuffer& buffer, V2IMessage message, const std::string& station,
                                                SimTime now) {
  message.origin = MessageOrigin::kVehicle;
  return enqueue_or_warn(buffer, message, station, now);
}

}  // namespace irsm::netsim
