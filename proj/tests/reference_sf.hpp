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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "irsm/netsim/sf_buffer.hpp"

namespace irsm::testing {

// Straightforward store-and-forward buffer kept as an unsorted vector and
// fully re-sorted on every operation.
class ReferenceSfBuffer {
 public:
  struct Item {
    V2IMessage m;
    int done = 0;
    SimTime next{};
  };

  ReferenceSfBuffer(std::size_t capacity, SimDuration period, int max_frames)
      : capacity_(capacity), period_(period), max_frames_(max_frames) {}

  netsim::EnqueueOutcome enqueue(const V2IMessage& m, SimTime now, std::string* evicted) {
    if (m.expiry <= now) return netsim::EnqueueOutcome::kExpired;
    for (const auto& it : items_) {
      if (it.m.msg_id == m.msg_id) return netsim::EnqueueOutcome::kDuplicate;
    }
    if (items_.size() >= capacity_) {
      auto worst = items_.begin();
      for (auto it = items_.begin(); it != items_.end(); ++it) {
        auto rank = [](const Item& x) { return std::make_tuple(x.m.priority, -micros(x.m.expiry), x.m.msg_id); };
        auto a = rank(*it), b = rank(*worst);
        if (std::get<0>(a) < std::get<0>(b) ||
            (std::get<0>(a) == std::get<0>(b) &&
             (std::get<1>(a) < std::get<1>(b) || (std::get<1>(a) == std::get<1>(b) && std::get<2>(a) > std::get<2>(b))))) {
          worst = it;
        }
      }
      if (worst->m.priority >= m.priority) return netsim::EnqueueOutcome::kCapacity;
      if (evicted) *evicted = worst->m.msg_id;
      items_.erase(worst);
    }
    items_.push_back(Item{m, 0, now});
    return netsim::EnqueueOutcome::kAccepted;
  }

  std::vector<std::string> tick(int neighbors, double load, SimTime now) {
    std::erase_if(items_, [&](const Item& x) { return x.m.expiry <= now; });
    std::vector<std::string> sent;
    if (neighbors <= 0) return sent;
    int budget = static_cast<int>(std::floor(std::clamp(1.0 - load, 0.0, 1.0) * max_frames_ + 1e-9));
    std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) {
      if (a.m.priority != b.m.priority) return a.m.priority > b.m.priority;
      if (a.m.expiry != b.m.expiry) return a.m.expiry < b.m.expiry;
      return a.m.msg_id < b.m.msg_id;
    });
    for (auto& x : items_) {
      if (budget == 0) break;
      if (x.next > now) continue;
      ++x.done;
      x.next = now + period_;
      --budget;
      sent.push_back(x.m.msg_id);
    }
    std::erase_if(items_, [](const Item& x) { return x.done >= x.m.redundancy; });
    return sent;
  }

  std::size_t size() const { return items_.size(); }

 private:
  std::size_t capacity_;
  SimDuration period_;
  int max_frames_;
  std::vector<Item> items_;
};

struct SfPropertyOutcome {
  std::size_t messages = 0;
  std::size_t ticks = 0;
  std::size_t completed = 0;
  std::size_t expired = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Drives SfBuffer and the reference with the same random workload and checks
// redundancy, expiry and ordering at every tick.
inline SfPropertyOutcome run_sf_property(std::uint64_t seed, std::size_t messages) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const SimDuration period = seconds(1);
  netsim::SfBuffer buf(24, netsim::DistributionPolicy{period, 6});
  ReferenceSfBuffer ref(24, period, 6);
  SfPropertyOutcome out;
  auto violate = [&](std::string what) {
    if (out.violations.size() < 20) out.violations.push_back(std::move(what));
  };

  std::map<std::string, V2IMessage> posted;
  std::map<std::string, int> count;
  std::size_t next_id = 0;
  SimTime now{};
  while (next_id < messages || buf.size() > 0) {
    if (next_id < messages) {
      const int arrivals = pick(0, 5);
      for (int i = 0; i < arrivals && next_id < messages; ++i) {
        V2IMessage m;
        m.msg_id = "m" + std::to_string(next_id++);
        m.priority = pick(0, 7) * 32;
        m.size = static_cast<std::uint64_t>(pick(50, 400));
        m.redundancy = pick(1, 5);
        m.created_at = now;
        m.expiry = now + millis(pick(0, 12000));
        m.msg_type = MessageType::kDenmLike;
        std::string ev_b;
        const auto a = buf.enqueue(m, now);
        const auto b = ref.enqueue(m, now, &ev_b);
        if (a.outcome != b) violate("enqueue outcome differs for " + m.msg_id);
        if (a.evicted.value_or("") != ev_b) violate("eviction differs for " + m.msg_id);
        if (a.accepted()) posted[m.msg_id] = m;
        ++out.messages;
      }
    }
    const int neighbors = pick(0, 9) == 0 ? 0 : pick(1, 8);
    const double load = pick(0, 10) / 10.0;
    const auto r = buf.distribution_tick(neighbors, load, now);
    const auto expect = ref.tick(neighbors, load, now);
    ++out.ticks;

    std::vector<std::string> got;
    for (const auto& f : r.broadcasts) got.push_back(f.msg_id);
    if (got != expect) violate("tick " + std::to_string(out.ticks) + " broadcast set differs");
    for (std::size_t i = 0; i < r.broadcasts.size(); ++i) {
      const auto& m = posted.at(r.broadcasts[i].msg_id);
      if (m.expiry <= now) violate("broadcast after expiry: " + m.msg_id);
      if (r.broadcasts[i].broadcast_number != ++count[m.msg_id]) violate("broadcast number skew: " + m.msg_id);
      if (i > 0) {
        const auto& p = posted.at(r.broadcasts[i - 1].msg_id);
        if (std::make_tuple(-m.priority, m.expiry, m.msg_id) <= std::make_tuple(-p.priority, p.expiry, p.msg_id)) {
          violate("priority order violated at tick " + std::to_string(out.ticks));
        }
      }
    }
    for (const auto& rm : r.removed) {
      const int n = count[rm.msg_id];
      if (rm.broadcasts_done != n) violate("removal count mismatch: " + rm.msg_id);
      if (rm.reason == netsim::RemovalReason::kRedundancyReached) {
        ++out.completed;
        if (n != posted.at(rm.msg_id).redundancy) violate("completed without exact redundancy: " + rm.msg_id);
      } else {
        ++out.expired;
        if (n >= posted.at(rm.msg_id).redundancy) violate("expired after full redundancy: " + rm.msg_id);
      }
    }
    if (buf.size() != ref.size()) violate("buffer sizes differ");
    for (const auto& e : buf.entries()) {
      if (e.broadcasts_done > e.message.redundancy) violate("broadcasts_done above redundancy");
    }
    now += period;
  }
  return out;
}

}  // namespace irsm::testing
