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

#include "irsm/netsim/token_bucket.hpp"

#include <algorithm>

#include "irsm/core/error.hpp"

namespace irsm::netsim {
namespace {
constexpr std::uint64_t kMicrosPerSecond = 1'000'000;
}

TokenBucket::TokenBucket(std::uint64_t rate, std::uint64_t burst, SimTime start)
    : rate_(rate), burst_(burst), credit_(Credit{burst} * kMicrosPerSecond), last_refill_(start) {}

TokenBucket::Credit TokenBucket::credit_at(SimTime now) const {
  const Credit cap = Credit{burst_} * kMicrosPerSecond;
  if (now <= last_refill_) return credit_;
  const auto elapsed = static_cast<std::uint64_t>((now - last_refill_).count());
  return std::min(cap, credit_ + Credit{rate_} * elapsed);
}

std::uint64_t TokenBucket::tokens(SimTime now) const {
  return static_cast<std::uint64_t>(credit_at(now) / kMicrosPerSecond);
}

SimTime TokenBucket::eligible_at(std::uint64_t bytes, SimTime now) const {
  const Credit need = Credit{bytes} * kMicrosPerSecond;
  const Credit have = credit_at(now);
  if (have >= need) return now;
  if (rate_ == 0) return SimTime::max();
  const Credit deficit = need - have;
  const auto wait = static_cast<std::int64_t>((deficit + rate_ - 1) / rate_);
  return now + SimDuration{wait};
}

ShapeResult TokenBucket::shape(std::uint64_t bytes, SimTime now) {
  if (bytes == 0) throw Error(ErrorCode::kInvalidArgument, "cannot shape a 0-byte frame");
  if (bytes > burst_) {
    throw Error(ErrorCode::kFrameTooLarge,
                std::to_string(bytes) + " bytes exceeds burst " + std::to_string(burst_));
  }
  const Credit have = credit_at(now);
  if (now > last_refill_) {
    credit_ = have;
    last_refill_ = now;
  }
  const Credit need = Credit{bytes} * kMicrosPerSecond;
  if (have >= need) {
    credit_ -= need;
    return Granted{};
  }
  return Queued{eligible_at(bytes, now)};
}

}  // namespace irsm::netsim
