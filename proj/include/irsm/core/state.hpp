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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "irsm/core/manifest.hpp"
#include "irsm/core/model.hpp"

namespace irsm {

struct Assignment {
  Version version;
  Activation activation = Activation::kActive;
  // Copied from the manifest at assignment time so planning needs no repository.
  std::vector<Dependency> depends;

  bool operator==(const Assignment&) const = default;
};

// What the center wants a station to look like.
struct DesiredState {
  std::map<std::string, Assignment> assignments;
  std::map<std::string, ConfigSet> configs;

  bool operator==(const DesiredState&) const = default;
};

// What a station says it looks like.
struct ReportedState {
  std::map<std::string, Version> installed;
  std::set<std::string> active;
  std::map<std::string, std::uint64_t> applied_config_versions;
  std::map<std::string, FunctionHealth> health;

  bool operator==(const ReportedState&) const = default;
};

namespace action {
struct Install {
  std::string name;
  Version version;
  bool operator==(const Install&) const = default;
};
struct Remove {
  std::string name;
  bool operator==(const Remove&) const = default;
};
struct Configure {
  ConfigSet config;
  bool operator==(const Configure&) const = default;
};
struct Activate {
  std::string name;
  bool operator==(const Activate&) const = default;
};
struct Deactivate {
  std::string name;
  bool operator==(const Deactivate&) const = default;
};
}  // namespace action

using Action = std::variant<action::Install, action::Remove, action::Configure, action::Activate,
                            action::Deactivate>;
using ActionList = std::vector<Action>;

// Package (or app) the action targets.
const std::string& action_subject(const Action& a);
std::string describe(const Action& a);

// Configs for apps that are neither assigned nor "system" stay dormant.
bool config_applicable(const DesiredState& desired, const std::string& app);

// True when installed versions, the active set and applied config versions
// all agree with `desired`. Health is not part of the comparison.
bool reported_matches(const DesiredState& desired, const ReportedState& reported);

// Reference semantics of a fully successful reconciliation round.
ReportedState apply_actions(ReportedState reported, const ActionList& actions);

void to_json(nlohmann::json& j, const Assignment& v);
void from_json(const nlohmann::json& j, Assignment& v);
void to_json(nlohmann::json& j, const DesiredState& v);
void from_json(const nlohmann::json& j, DesiredState& v);
void to_json(nlohmann::json& j, const ReportedState& v);
void from_json(const nlohmann::json& j, ReportedState& v);
nlohmann::json action_to_json(const Action& a);
Action action_from_json(const nlohmann::json& j);
nlohmann::json actions_to_json(const ActionList& list);
ActionList actions_from_json(const nlohmann::json& j);

}  // namespace irsm
