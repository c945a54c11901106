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

#include "irsm/netsim/fabric.hpp"

#include <algorithm>

#include "irsm/core/error.hpp"

namespace irsm::netsim {
namespace {

constexpr std::uint64_t kMicrosPerSecond = 1'000'000;

SimDuration serialization(std::uint64_t bytes, std::uint64_t bandwidth) {
  return SimDuration{static_cast<std::int64_t>((bytes * kMicrosPerSecond + bandwidth - 1) / bandwidth)};
}

std::size_t index(Direction d) { return d == Direction::kUp ? 0 : 1; }

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::kUp ? "up" : "down"; }

Fabric::Fabric(VirtualClock& clock, Trace& trace, std::uint64_t seed, FabricConfig config)
    : clock_(clock), trace_(trace), config_(config), rng_(seed) {}

void Fabric::attach_station(const std::string& station, const LinkProfile& profile) {
  if (!profile.valid()) throw Error(ErrorCode::kInvalidArgument, "invalid link profile " + profile.name);
  StationLink l;
  l.profile = profile;
  const std::uint64_t mgmt_rate = std::max<std::uint64_t>(1, profile.bandwidth * config_.reserved_permille / 1000);
  const std::uint64_t fn_rate = profile.bandwidth > mgmt_rate ? profile.bandwidth - mgmt_rate : 1;
  for (auto& d : l.dirs) {
    d.management.bucket = TokenBucket(mgmt_rate, std::max(mgmt_rate, config_.min_management_burst), clock_.now());
    d.function_aggregate = TokenBucket(fn_rate, fn_rate, clock_.now());
  }
  if (auto it = links_.find(station); it != links_.end()) {
    l.receiver = std::move(it->second.receiver);
    l.dirs[0].apps = std::move(it->second.dirs[0].apps);
    l.dirs[1].apps = std::move(it->second.dirs[1].apps);
  }
  links_.insert_or_assign(station, std::move(l));
}

bool Fabric::has_station(const std::string& station) const { return links_.contains(station); }

Fabric::StationLink& Fabric::link(const std::string& station) {
  auto it = links_.find(station);
  if (it == links_.end()) throw Error(ErrorCode::kInvalidArgument, "no link for station " + station);
  return it->second;
}

const Fabric::StationLink& Fabric::link(const std::string& station) const {
  auto it = links_.find(station);
  if (it == links_.end()) throw Error(ErrorCode::kInvalidArgument, "no link for station " + station);
  return it->second;
}

const LinkProfile& Fabric::profile(const std::string& station) const { return link(station).profile; }

void Fabric::set_app_rate(const std::string& station, const std::string& app, std::uint64_t rate) {
  auto& l = link(station);
  for (auto& d : l.dirs) {
    auto& q = d.apps[app];
    q.bucket = TokenBucket(rate, rate, clock_.now());
  }
}

void Fabric::set_station_receiver(const std::string& station, Receiver r) {
  link(station).receiver = std::move(r);
}

void Fabric::set_link_up(const std::string& station, bool up) {
  auto& l = link(station);
  if (l.up == up) return;
  l.up = up;
  trace_.record(clock_.now(), up ? "LINK_UP" : "LINK_DOWN", "station=" + station);
}

bool Fabric::link_up(const std::string& station) const { return link(station).up; }

std::uint64_t Fabric::management_rate(const std::string& station) const {
  return link(station).dirs[0].management.bucket.rate();
}

std::uint64_t Fabric::function_rate(const std::string& station) const {
  return link(station).dirs[0].function_aggregate.rate();
}

double Fabric::uniform() {
  return static_cast<double>(rng_() >> 11) * (1.0 / 9007199254740992.0);
}

SendReceipt Fabric::send(const std::string& station, Direction dir, const TrafficClass& cls,
                         std::string payload, std::uint64_t size) {
  auto& l = link(station);
  if (!l.up) throw Error(ErrorCode::kLinkDown, "link to " + station + " is down");
  if (size == 0) size = payload.size();
  if (size == 0) throw Error(ErrorCode::kInvalidArgument, "empty frame");

  auto& d = l.dirs[index(dir)];
  ClassQueue* queue = nullptr;
  if (cls.management) {
    queue = &d.management;
  } else {
    auto it = d.apps.find(cls.app);
    if (it == d.apps.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no bandwidth configured for app " + cls.app);
    }
    queue = &it->second;
    if (size > d.function_aggregate.burst()) {
      throw Error(ErrorCode::kFrameTooLarge, std::to_string(size) + " bytes exceeds function burst");
    }
  }
  if (size > queue->bucket.burst()) {
    throw Error(ErrorCode::kFrameTooLarge, std::to_string(size) + " bytes exceeds burst " +
                                               std::to_string(queue->bucket.burst()));
  }

  auto& st = d.stats[cls.key()];
  ++st.offered_frames;
  st.offered_bytes += size;

  SendReceipt receipt;
  receipt.sequence = next_sequence_++;
  if (queue->backlog.size() >= config_.backlog_limit) {
    ++st.backlog_drops;
    receipt.backlog_full = true;
    trace_.record(clock_.now(), "BACKLOG_DROP",
                  "station=" + station + " dir=" + std::string(to_string(dir)) + " class=" + cls.key() +
                      " seq=" + std::to_string(receipt.sequence));
    return receipt;
  }
  queue->backlog.push_back(Pending{receipt.sequence, std::move(payload), size, clock_.now()});
  trace_.record(clock_.now(), "SEND",
                "station=" + station + " dir=" + std::string(to_string(dir)) + " class=" + cls.key() +
                    " size=" + std::to_string(size) + " seq=" + std::to_string(receipt.sequence));

  last_receipt_ = &receipt;
  if (cls.management) {
    pump_management(station, dir);
  } else {
    pump_functions(station, dir);
  }
  last_receipt_ = nullptr;
  return receipt;
}

void Fabric::schedule_pump(const std::string& station, Direction dir, bool management, SimTime at) {
  auto& d = link(station).dirs[index(dir)];
  auto& slot = management ? d.management_pump_at : d.function_pump_at;
  if (slot && *slot <= at && *slot >= clock_.now()) return;
  slot = at;
  clock_.schedule(at, "pump", [this, station, dir, management, at] {
    auto& dd = link(station).dirs[index(dir)];
    auto& s = management ? dd.management_pump_at : dd.function_pump_at;
    if (s && *s == at) s.reset();
    if (management) {
      pump_management(station, dir);
    } else {
      pump_functions(station, dir);
    }
  });
}

void Fabric::pump_management(const std::string& station, Direction dir) {
  auto& d = link(station).dirs[index(dir)];
  const SimTime now = clock_.now();
  auto& q = d.management;
  while (!q.backlog.empty()) {
    auto& head = q.backlog.front();
    auto result = q.bucket.shape(head.size, now);
    if (auto* queued = std::get_if<Queued>(&result)) {
      schedule_pump(station, dir, true, queued->eligible_at);
      return;
    }
    Pending frame = std::move(head);
    q.backlog.pop_front();
    transmit(station, dir, TrafficClass::Management(), std::move(frame));
  }
}

void Fabric::pump_functions(const std::string& station, Direction dir) {
  auto& d = link(station).dirs[index(dir)];
  const SimTime now = clock_.now();
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [app, q] : d.apps) {
      if (q.backlog.empty()) continue;
      const auto size = q.backlog.front().size;
      if (q.bucket.eligible_at(size, now) > now || d.function_aggregate.eligible_at(size, now) > now) continue;
      q.bucket.shape(size, now);
      d.function_aggregate.shape(size, now);
      Pending frame = std::move(q.backlog.front());
      q.backlog.pop_front();
      transmit(station, dir, TrafficClass::Function(app), std::move(frame));
      progress = true;
    }
  }
  std::optional<SimTime> next;
  for (auto& [app, q] : d.apps) {
    if (q.backlog.empty()) continue;
    const auto size = q.backlog.front().size;
    const SimTime e = std::max(q.bucket.eligible_at(size, now), d.function_aggregate.eligible_at(size, now));
    if (e == SimTime::max()) continue;
    if (!next || e < *next) next = e;
  }
  if (next) schedule_pump(station, dir, false, *next);
}

void Fabric::transmit(const std::string& station, Direction dir, const TrafficClass& cls, Pending frame) {
  auto& l = link(station);
  auto& d = l.dirs[index(dir)];
  auto& tx = cls.management ? d.management_tx : d.function_tx;
  auto& st = d.stats[cls.key()];
  const SimTime now = clock_.now();
  st.admitted_bytes += frame.size;

  const SimDuration one_pass = serialization(frame.size, l.profile.bandwidth);
  SimDuration on_air = one_pass;
  bool lost = false;
  if (cls.management) {
    // The management stream is reliable: a lost frame costs a link-layer
    // retransmission instead of disappearing.
    for (int i = 0; i < config_.max_retransmissions && uniform() < l.profile.loss_rate; ++i) {
      on_air += one_pass;
      ++st.retransmissions;
    }
  } else {
    lost = uniform() < l.profile.loss_rate;
  }
  const SimTime start = std::max(now, tx.free_at);
  tx.free_at = start + on_air;
  const SimTime deliver_at = tx.free_at + l.profile.delay;

  const std::string attrs = "station=" + station + " dir=" + std::string(to_string(dir)) + " class=" + cls.key() +
                            " seq=" + std::to_string(frame.sequence);
  if (last_receipt_ != nullptr && last_receipt_->sequence == frame.sequence) {
    last_receipt_->lost = lost;
    if (!lost) last_receipt_->delivery_at = deliver_at;
  }
  if (lost) {
    ++st.lost_frames;
    trace_.record(now, "LOSS", attrs);
    return;
  }
  Delivery delivery{station, dir, cls, std::move(frame.payload), frame.size, frame.sequence, frame.sent_at, deliver_at};
  clock_.schedule(deliver_at, "deliver", [this, delivery = std::move(delivery), attrs]() {
    auto& dd = link(delivery.station).dirs[index(delivery.direction)];
    auto& s = dd.stats[delivery.traffic_class.key()];
    ++s.delivered_frames;
    s.delivered_bytes += delivery.size;
    if (recording_) s.deliveries.emplace_back(delivery.delivered_at, delivery.size);
    trace_.record(delivery.delivered_at, "DELIVER", attrs);
    if (delivery.direction == Direction::kUp) {
      if (center_receiver_) center_receiver_(delivery);
    } else {
      auto& receiver = link(delivery.station).receiver;
      if (receiver) receiver(delivery);
    }
  });
}

const ClassStats& Fabric::stats(const std::string& station, Direction dir, const TrafficClass& cls) const {
  static const ClassStats kEmpty;
  const auto& d = link(station).dirs[index(dir)];
  auto it = d.stats.find(cls.key());
  return it == d.stats.end() ? kEmpty : it->second;
}

}  // namespace irsm::netsim
