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

#include "irsm/core/state.hpp"

#include "irsm/core/error.hpp"

namespace irsm {

using nlohmann::json;

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

const std::string& action_subject(const Action& a) {
  return std::visit(overloaded{
                        [](const action::Install& x) -> const std::string& { return x.name; },
                        [](const action::Remove& x) -> const std::string& { return x.name; },
                        [](const action::Configure& x) -> const std::string& {
                          return x.config.app_name;
                        },
                        [](const action::Activate& x) -> const std::string& { return x.name; },
                        [](const action::Deactivate& x) -> const std::string& { return x.name; },
                    },
                    a);
}

std::string describe(const Action& a) {
  return std::visit(
      overloaded{
          [](const action::Install& x) { return "Install(" + x.name + "," + x.version.to_string() + ")"; },
          [](const action::Remove& x) { return "Remove(" + x.name + ")"; },
          [](const action::Configure& x) {
            return "Configure(" + x.config.app_name + ",v" + std::to_string(x.config.version) + ")";
          },
          [](const action::Activate& x) { return "Activate(" + x.name + ")"; },
          [](const action::Deactivate& x) { return "Deactivate(" + x.name + ")"; },
      },
      a);
}

bool config_applicable(const DesiredState& desired, const std::string& app) {
  return app == kSystemApp || desired.assignments.contains(app);
}

bool reported_matches(const DesiredState& desired, const ReportedState& reported) {
  if (desired.assignments.size() != reported.installed.size()) return false;
  std::size_t active_count = 0;
  for (const auto& [name, a] : desired.assignments) {
    auto it = reported.installed.find(name);
    if (it == reported.installed.end() || it->second != a.version) return false;
    const bool want_active = a.activation == Activation::kActive;
    if (want_active != reported.active.contains(name)) return false;
    if (want_active) ++active_count;
  }
  if (active_count != reported.active.size()) return false;
  for (const auto& [app, cfg] : desired.configs) {
    if (!config_applicable(desired, app)) continue;
    auto it = reported.applied_config_versions.find(app);
    if (it == reported.applied_config_versions.end() || it->second != cfg.version) return false;
  }
  return true;
}

ReportedState apply_actions(ReportedState r, const ActionList& actions) {
  for (const auto& a : actions) {
    std::visit(overloaded{
                   [&](const action::Install& x) {
                     r.installed[x.name] = x.version;
                     r.active.erase(x.name);
                     r.health[x.name] = FunctionHealth::kStopped;
                   },
                   [&](const action::Remove& x) {
                     r.installed.erase(x.name);
                     r.active.erase(x.name);
                     r.health.erase(x.name);
                   },
                   [&](const action::Configure& x) {
                     r.applied_config_versions[x.config.app_name] = x.config.version;
                   },
                   [&](const action::Activate& x) {
                     r.active.insert(x.name);
                     r.health[x.name] = FunctionHealth::kRunning;
                   },
                   [&](const action::Deactivate& x) {
                     r.active.erase(x.name);
                     r.health[x.name] = FunctionHealth::kStopped;
                   },
               },
               a);
  }
  return r;
}

void to_json(json& j, const Assignment& v) {
  json deps = json::array();
  for (const auto& d : v.depends) deps.push_back({{"name", d.name}, {"version", d.min_version}});
  j = json{{"version", v.version}, {"activation", v.activation}, {"depends", std::move(deps)}};
}

void from_json(const json& j, Assignment& v) {
  j.at("version").get_to(v.version);
  j.at("activation").get_to(v.activation);
  v.depends.clear();
  for (const auto& d : j.value("depends", json::array())) {
    v.depends.push_back(Dependency{d.at("name").get<std::string>(), d.at("version").get<Version>()});
  }
}

void to_json(json& j, const DesiredState& v) {
  j = json{{"assignments", v.assignments}, {"configs", v.configs}};
}

void from_json(const json& j, DesiredState& v) {
  j.at("assignments").get_to(v.assignments);
  j.at("configs").get_to(v.configs);
}

void to_json(json& j, const ReportedState& v) {
  j = json{{"installed", v.installed},
           {"active", v.active},
           {"applied_config_versions", v.applied_config_versions},
           {"health", v.health}};
}

void from_json(const json& j, ReportedState& v) {
  j.at("installed").get_to(v.installed);
  j.at("active").get_to(v.active);
  j.at("applied_config_versions").get_to(v.applied_config_versions);
  v.health = j.value("health", std::map<std::string, FunctionHealth>{});
}

json action_to_json(const Action& a) {
  return std::visit(
      overloaded{
          [](const action::Install& x) {
            return json{{"op", "INSTALL"}, {"name", x.name}, {"version", x.version}};
          },
          [](const action::Remove& x) { return json{{"op", "REMOVE"}, {"name", x.name}}; },
          [](const action::Configure& x) {
            return json{{"op", "CONFIGURE"}, {"name", x.config.app_name}, {"config", x.config}};
          },
          [](const action::Activate& x) { return json{{"op", "ACTIVATE"}, {"name", x.name}}; },
          [](const action::Deactivate& x) { return json{{"op", "DEACTIVATE"}, {"name", x.name}}; },
      },
      a);
}

Action action_from_json(const json& j) {
  const auto op = j.at("op").get<std::string>();
  if (op == "INSTALL") return action::Install{j.at("name").get<std::string>(), j.at("version").get<Version>()};
  if (op == "REMOVE") return action::Remove{j.at("name").get<std::string>()};
  if (op == "CONFIGURE") return action::Configure{j.at("config").get<ConfigSet>()};
  if (op == "ACTIVATE") return action::Activate{j.at("name").get<std::string>()};
  if (op == "DEACTIVATE") return action::Deactivate{j.at("name").get<std::string>()};
  throw Error(ErrorCode::kMalformedFrame, "unknown action op '" + op + "'");
}

json actions_to_json(const ActionList& list) {
  json out = json::array();
  for (const auto& a : list) out.push_back(action_to_json(a));
  return out;
}

ActionList actions_from_json(const json& j) {
  ActionList out;
  for (const auto& e : j) out.push_back(action_from_json(e));
  return out;
}

}  // namespace irsm
