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

#include "irsm/center/planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "irsm/core/error.hpp"

namespace irsm::center {

std::vector<std::string> dependency_order(const DesiredState& desired) {
  std::map<std::string, std::size_t> indegree;
  std::map<std::string, std::vector<std::string>> dependents;
  for (const auto& [name, a] : desired.assignments) {
    indegree.try_emplace(name, 0);
    std::set<std::string> seen;
    for (const auto& dep : a.depends) {
      if (dep.name == name || !desired.assignments.contains(dep.name) || !seen.insert(dep.name).second) continue;
      ++indegree[name];
      dependents[dep.name].push_back(name);
    }
  }

  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [name, deg] : indegree) {
    if (deg == 0) ready.push(name);
  }
  std::vector<std::string> order;
  std::set<std::string> placed;
  while (order.size() < indegree.size()) {
    if (ready.empty()) {
      // Cycle: release the smallest unplaced name.
      for (const auto& [name, deg] : indegree) {
        if (!placed.contains(name)) {
          indegree[name] = 0;
          ready.push(name);
          break;
        }
      }
    }
    std::string next = ready.top();
    ready.pop();
    if (!placed.insert(next).second) continue;
    order.push_back(next);
    for (const auto& d : dependents[next]) {
      if (placed.contains(d)) continue;
      if (indegree[d] > 0 && --indegree[d] == 0) ready.push(d);
    }
  }
  return order;
}

ActionList compute_actions(const DesiredState& desired, const std::optional<ReportedState>& reported_opt) {
  const ReportedState reported = reported_opt.value_or(ReportedState{});
  const auto order = dependency_order(desired);
  ActionList out;

  for (const auto& [name, _] : reported.installed) {
    if (!desired.assignments.contains(name)) out.push_back(action::Remove{name});
  }

  std::set<std::string> reinstalled;
  for (const auto& name : order) {
    const auto& a = desired.assignments.at(name);
    auto it = reported.installed.find(name);
    if (it == reported.installed.end() || it->second != a.version) {
      out.push_back(action::Install{name, a.version});
      reinstalled.insert(name);
    }
  }

  for (const auto& [app, cfg] : desired.configs) {
    if (!config_applicable(desired, app)) continue;
    auto it = reported.applied_config_versions.find(app);
    if (it == reported.applied_config_versions.end() || it->second != cfg.version) {
      out.push_back(action::Configure{cfg});
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& a = desired.assignments.at(*it);
    if (a.activation == Activation::kInactive && reported.active.contains(*it) && !reinstalled.contains(*it)) {
      out.push_back(action::Deactivate{*it});
    }
  }

  for (const auto& name : order) {
    const auto& a = desired.assignments.at(name);
    if (a.activation == Activation::kActive && (!reported.active.contains(name) || reinstalled.contains(name))) {
      out.push_back(action::Activate{name});
    }
  }
  return out;
}

DesiredState assign_with_closure(DesiredState desired, const PackageRepository& repo, const std::string& name,
                                 const Version& version, Activation activation) {
  const RepositoryEntry* root = repo.find(name, version);
  if (root == nullptr) {
    throw Error(ErrorCode::kUnknownPackage, name + " " + version.to_string() + " is not in the repository");
  }
  desired.assignments[name] = Assignment{version, activation, root->manifest.depends};

  std::deque<const RepositoryEntry*> work{root};
  std::set<std::string> visited{name};
  while (!work.empty()) {
    const RepositoryEntry* e = work.front();
    work.pop_front();
    for (const auto& dep : e->manifest.depends) {
      if (!visited.insert(dep.name).second) {
        // Already pulled in on this pass; the bound must still hold.
        const auto& have = desired.assignments.at(dep.name);
        if (have.version < dep.min_version) {
          throw Error(ErrorCode::kDependencyUnsatisfiable, dep.name);
        }
        continue;
      }
      const RepositoryEntry* chosen = nullptr;
      // Inactive roots still need their dependencies installed; those stay as they were.
      Activation dep_activation = activation;
      if (auto it = desired.assignments.find(dep.name); it != desired.assignments.end()) {
        if (it->second.activation == Activation::kActive) dep_activation = Activation::kActive;
        if (it->second.version >= dep.min_version) chosen = repo.find(dep.name, it->second.version);
      }
      if (chosen == nullptr) chosen = repo.newest_satisfying(dep.name, dep.min_version);
      if (chosen == nullptr) throw Error(ErrorCode::kDependencyUnsatisfiable, dep.name);
      desired.assignments[dep.name] = Assignment{chosen->manifest.version, dep_activation, chosen->manifest.depends};
      work.push_back(chosen);
    }
  }
  return desired;
}

}  // namespace irsm::center
