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
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "irsm/core/enums.hpp"

namespace irsm {

enum class FrameKind { kHello, kHeartbeat, kReport, kActions, kFault, kDecision, kPing, kPong };

template <>
struct EnumNames<FrameKind> {
  static constexpr auto names = std::to_array<std::string_view>(
      {"HELLO", "HEARTBEAT", "REPORT", "ACTIONS", "FAULT", "DECISION", "PING", "PONG"});
};

inline constexpr std::size_t kMaxFrameBody = 16u << 20;

// 4-byte big-endian length + UTF-8 JSON object.
std::string encode_frame(const nlohmann::json& body);

// Kind of a decoded frame body. Throws Error(kMalformedFrame) when "kind" is
// missing or not one of the protocol's kinds.
FrameKind frame_kind(const nlohmann::json& body);

// Incremental decoder for a byte stream carrying frames.
class FrameDecoder {
 public:
  void feed(std::string_view bytes);

  // Next complete frame, or nullopt when more bytes are needed. Throws
  // Error(kMalformedFrame) on oversize length or a body that is not a JSON object.
  std::optional<nlohmann::json> next();

  std::size_t buffered() const { return buffer_.size() - consumed_; }

 private:
  std::string buffer_;
  std::size_t consumed_ = 0;
};

}  // namespace irsm
