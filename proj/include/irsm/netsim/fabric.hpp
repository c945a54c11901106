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
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "irsm/core/link_profile.hpp"
#include "irsm/netsim/clock.hpp"
#include "irsm/netsim/token_bucket.hpp"
#include "irsm/netsim/trace.hpp"

namespace irsm::netsim {

enum class Direction { kUp, kDown };  // up: station -> center

std::string_view to_string(Direction d);

// MANAGEMENT draws from the reserved share; every function app has its own class.
struct TrafficClass {
  bool management = true;
  std::string app;

  static TrafficClass Management() { return {true, {}}; }
  static TrafficClass Function(std::string app) { return {false, std::move(app)}; }

  std::string key() const { return management ? std::string("MANAGEMENT") : "FUNCTION:" + app; }
  bool operator==(const TrafficClass&) const = default;
};

struct Delivery {
  std::string station;
  Direction direction = Direction::kUp;
  TrafficClass traffic_class;
  std::string payload;
  std::uint64_t size = 0;
  std::uint64_t sequence = 0;
  SimTime sent_at{};
  SimTime delivered_at{};
};

struct FabricConfig {
  // Share of every link reserved for management traffic, in permille.
  std::uint32_t reserved_permille = 100;
  // Management bursts are at least this large so one report frame always fits.
  std::uint64_t min_management_burst = 4096;
  // Frames waiting for admission per class before tail drop.
  std::size_t backlog_limit = 512;
  // Retransmissions attempted for a lost management frame.
  int max_retransmissions = 16;
};

struct ClassStats {
  std::uint64_t offered_frames = 0;
  std::uint64_t offered_bytes = 0;
  std::uint64_t admitted_bytes = 0;
  std::uint64_t delivered_frames = 0;
  std::uint64_t delivered_bytes = 0;
  std::uint64_t lost_frames = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t backlog_drops = 0;
  std::vector<std::pair<SimTime, std::uint64_t>> deliveries;  // (time, bytes), when recording
};

struct SendReceipt {
  std::uint64_t sequence = 0;
  bool backlog_full = false;
  // Known when the frame was admitted at once.
  std::optional<SimTime> delivery_at;
  bool lost = false;
};

// Station <-> center links driven by the virtual clock. Each direction has a
// management transmitter and a function transmitter; function frames pass a
// per-app bucket and an aggregate bucket of (1 - reserved) x bandwidth,
// management frames pass a bucket of reserved x bandwidth. Serialization
// always runs at full link bandwidth.
class Fabric {
 public:
  using Receiver = std::function<void(const Delivery&)>;

  Fabric(VirtualClock& clock, Trace& trace, std::uint64_t seed, FabricConfig config = {});

  void attach_station(const std::string& station, const LinkProfile& profile);
  bool has_station(const std::string& station) const;
  const LinkProfile& profile(const std::string& station) const;

  // Per-app shaped rate in both directions; burst is one second of rate.
  void set_app_rate(const std::string& station, const std::string& app, std::uint64_t rate);

  void set_center_receiver(Receiver r) { center_receiver_ = std::move(r); }
  void set_station_receiver(const std::string& station, Receiver r);

  void set_link_up(const std::string& station, bool up);
  bool link_up(const std::string& station) const;

  // Throws Error(kLinkDown) when the link is down, Error(kFrameTooLarge) when
  // the frame exceeds a bucket's burst, Error(kInvalidArgument) for unknown
  // stations, empty frames or apps without a configured rate.
  SendReceipt send(const std::string& station, Direction dir, const TrafficClass& cls,
                   std::string payload, std::uint64_t size = 0);

  void set_recording(bool on) { recording_ = on; }
  const ClassStats& stats(const std::string& station, Direction dir, const TrafficClass& cls) const;

  std::uint64_t management_rate(const std::string& station) const;
  std::uint64_t function_rate(const std::string& station) const;

  const FabricConfig& config() const { return config_; }

 private:
  struct Pending {
    std::uint64_t sequence;
    std::string payload;
    std::uint64_t size;
    SimTime sent_at;
  };
  struct ClassQueue {
    TokenBucket bucket;
    std::deque<Pending> backlog;
  };
  struct Transmitter {
    SimTime free_at{};
  };
  struct DirectionState {
    ClassQueue management;
    TokenBucket function_aggregate;
    std::map<std::string, ClassQueue> apps;
    Transmitter management_tx;
    Transmitter function_tx;
    std::optional<SimTime> management_pump_at;
    std::optional<SimTime> function_pump_at;
    std::map<std::string, ClassStats> stats;
  };
  struct StationLink {
    LinkProfile profile;
    bool up = true;
    DirectionState dirs[2];
    Receiver receiver;
  };

  StationLink& link(const std::string& station);
  const StationLink& link(const std::string& station) const;
  void pump_management(const std::string& station, Direction dir);
  void pump_functions(const std::string& station, Direction dir);
  void schedule_pump(const std::string& station, Direction dir, bool management, SimTime at);
  void transmit(const std::string& station, Direction dir, const TrafficClass& cls, Pending frame);
  double uniform();

  VirtualClock& clock_;
  Trace& trace_;
  FabricConfig config_;
  std::mt19937_64 rng_;
  std::map<std::string, StationLink> links_;
  Receiver center_receiver_;
  bool recording_ = false;
  std::uint64_t next_sequence_ = 1;
  SendReceipt* last_receipt_ = nullptr;
};

}  // namespace irsm::netsim
