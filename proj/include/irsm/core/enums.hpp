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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "irsm/core/error.hpp"

namespace irsm {

template <typename E>
struct EnumNames;  // specialised below with `static constexpr std::array names`

#define IRSM_ENUM_NAMES(Enum, ...)                                      \
  template <>                                                           \
  struct EnumNames<Enum> {                                              \
    static constexpr auto names = std::to_array<std::string_view>({__VA_ARGS__}); \
  }

enum class RegionClass { kHighwayDense, kHighwaySparse, kRural, kUrban };
IRSM_ENUM_NAMES(RegionClass, "HIGHWAY_DENSE", "HIGHWAY_SPARSE", "RURAL", "URBAN");

enum class PackageType { kSystem, kFunction, kManagement };
IRSM_ENUM_NAMES(PackageType, "SYSTEM", "FUNCTION", "MANAGEMENT");

enum class Activation { kActive, kInactive };
IRSM_ENUM_NAMES(Activation, "ACTIVE", "INACTIVE");

enum class FaultLayer { kOs, kFramework, kFunction, kNetwork, kDataCollection };
IRSM_ENUM_NAMES(FaultLayer, "OS", "FRAMEWORK", "FUNCTION", "NETWORK", "DATA_COLLECTION");

enum class Severity { kInfo, kWarning, kError, kCritical };
IRSM_ENUM_NAMES(Severity, "INFO", "WARNING", "ERROR", "CRITICAL");

enum class MessageType { kCamLike, kDenmLike, kService };
IRSM_ENUM_NAMES(MessageType, "CAM_LIKE", "DENM_LIKE", "SERVICE");

enum class MessageOrigin { kCenter, kVehicle, kLocal };
IRSM_ENUM_NAMES(MessageOrigin, "CENTER", "VEHICLE", "LOCAL");

enum class Liveness { kOnline, kSuspect, kOffline };
IRSM_ENUM_NAMES(Liveness, "ONLINE", "SUSPECT", "OFFLINE");

enum class FunctionHealth { kRunning, kStopped, kFaulted };
IRSM_ENUM_NAMES(FunctionHealth, "RUNNING", "STOPPED", "FAULTED");

enum class StrategyRung {
  kRestartFunction,
  kRestartFramework,
  kReinstallPackage,
  kRebootAgent,
  kEscalateToCenter
};
IRSM_ENUM_NAMES(StrategyRung, "RESTART_FUNCTION", "RESTART_FRAMEWORK", "REINSTALL_PACKAGE",
                "REBOOT_AGENT", "ESCALATE_TO_CENTER");

enum class DecisionKind {
  kAckLogged,
  kOrderStrategy,
  kQuarantineFunction,
  kReprovisionStation,
  kNotifyOperator
};
IRSM_ENUM_NAMES(DecisionKind, "ACK_LOGGED", "ORDER_STRATEGY", "QUARANTINE_FUNCTION",
                "REPROVISION_STATION", "NOTIFY_OPERATOR");

enum class CheckName {
  kDiskSpace,
  kClockSanity,
  kConfigDigest,
  kFrameworkAlive,
  kDataCollectionFresh,
  kLinkUp
};
IRSM_ENUM_NAMES(CheckName, "DISK_SPACE", "CLOCK_SANITY", "CONFIG_DIGEST", "FRAMEWORK_ALIVE",
                "DATA_COLLECTION_FRESH", "LINK_UP");

enum class CheckStatus { kPass, kFail };
IRSM_ENUM_NAMES(CheckStatus, "PASS", "FAIL");

#undef IRSM_ENUM_NAMES

template <typename E>
constexpr std::string_view to_string(E value) {
  return EnumNames<E>::names.at(static_cast<std::size_t>(value));
}

template <typename E>
constexpr std::optional<E> enum_from_string(std::string_view text) {
  const auto& names = EnumNames<E>::names;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == text) return static_cast<E>(i);
  }
  return std::nullopt;
}

template <typename E>
E parse_enum(std::string_view text, ErrorCode on_error = ErrorCode::kInvalidArgument) {
  if (auto v = enum_from_string<E>(text)) return *v;
  throw Error(on_error, "unknown enum value '" + std::string(text) + "'");
}

template <typename E>
constexpr std::size_t enum_count() {
  return EnumNames<E>::names.size();
}

}  // namespace irsm

// JSON encodes every named enum as its upper-case name.
namespace nlohmann {
template <typename E>
  requires requires { irsm::EnumNames<E>::names; }
struct adl_serializer<E> {
  static void to_json(json& j, E value) { j = std::string(irsm::to_string(value)); }
  static void from_json(const json& j, E& value) {
    value = irsm::parse_enum<E>(j.get<std::string>());
  }
};
}  // namespace nlohmann
