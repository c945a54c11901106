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
#include <variant>

#include "irsm/core/time.hpp"

namespace irsm::netsim {

struct Granted {
  bool operator==(const Granted&) const = default;
};
struct Queued {
  SimTime eligible_at;
  bool operator==(const Queued&) const = default;
};
using ShapeResult = std::variant<Granted, Queued>;

// Byte-granular token bucket with exact integer accounting. Tokens are kept
// in byte-microseconds so refill never rounds.
class TokenBucket {
 public:
  TokenBucket() = default;
  // Starts full.
  TokenBucket(std::uint64_t rate, std::uint64_t burst, SimTime start = kSimEpoch);

  // Consumes `bytes` when enough tokens are present, otherwise reports the
  // earliest time they will be (no consumption). Throws
  // Error(kInvalidArgument) for 0 bytes and Error(kFrameTooLarge) when
  // bytes > burst.
  ShapeResult shape(std::uint64_t bytes, SimTime now);

  SimTime eligible_at(std::uint64_t bytes, SimTime now) const;

  // Whole tokens available at `now`.
  std::uint64_t tokens(SimTime now) const;

  std::uint64_t rate() const { return rate_; }
  std::uint64_t burst() const { return burst_; }

 private:
  using Credit = unsigned __int128;  // byte-microseconds
  Credit credit_at(SimTime now) const;

  std::uint64_t rate_ = 0;
  std::uint64_t burst_ = 0;
  Credit credit_ = 0;
  SimTime last_refill_{};
};

}  // namespace irsm::netsim
