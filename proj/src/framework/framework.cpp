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

#include "irsm/framework/framework.hpp"

#include "irsm/core/error.hpp"

namespace irsm::framework {

std::string_view to_string(BundleState s) {
  switch (s) {
    case BundleState::kInstalled: return "INSTALLED";
    case BundleState::kResolved: return "RESOLVED";
    case BundleState::kActive: return "ACTIVE";
    case BundleState::kStopped: return "STOPPED";
    case BundleState::kFaulted: return "FAULTED";
  }
  return "?";
}

std::string_view to_string(FrameworkStatus s) {
  switch (s) {
    case FrameworkStatus::kRunning: return "RUNNING";
    case FrameworkStatus::kFaulted: return "FAULTED";
    case FrameworkStatus::kStopped: return "STOPPED";
  }
  return "?";
}

bool is_legal_transition(BundleState from, BundleState to) {
  using S = BundleState;
  if (to == S::kFaulted) return true;
  switch (from) {
    case S::kInstalled: return to == S::kResolved;
    case S::kResolved: return to == S::kActive;
    case S::kActive: return to == S::kStopped;
    case S::kStopped: return to == S::kActive;
    case S::kFaulted: return to == S::kResolved;
  }
  return false;
}

void ServiceRegistry::add(const std::string& interface, const std::string& provider, int priority) {
  services_[interface].insert(Entry{priority, provider});
}

void ServiceRegistry::remove_provider(const std::string& provider) {
  for (auto it = services_.begin(); it != services_.end();) {
    std::erase_if(it->second, [&](const Entry& e) { return e.provider == provider; });
    it = it->second.empty() ? services_.erase(it) : std::next(it);
  }
}

std::optional<std::string> ServiceRegistry::first(const std::string& interface) const {
  auto it = services_.find(interface);
  if (it == services_.end() || it->second.empty()) return std::nullopt;
  return it->second.begin()->provider;
}

std::vector<std::string> ServiceRegistry::providers(const std::string& interface) const {
  std::vector<std::string> out;
  if (auto it = services_.find(interface); it != services_.end()) {
    for (const auto& e : it->second) out.push_back(e.provider);
  }
  return out;
}

FunctionFramework::FunctionFramework(ResourceLedger& ledger) : ledger_(ledger) {}

const FunctionHandle& FunctionFramework::register_function(const PackageManifest& manifest, FunctionSpec spec) {
  if (handles_.contains(manifest.name)) {
    throw Error(ErrorCode::kDuplicateName, "function '" + manifest.name + "' already registered");
  }
  FunctionHandle h;
  h.name = manifest.name;
  h.version = manifest.version;
  h.priority = manifest.priority;
  h.pkg_type = manifest.pkg_type;
  h.quota = manifest.quota;
  h.spec = std::move(spec);
  return handles_.emplace(manifest.name, std::move(h)).first->second;
}

void FunctionFramework::unregister_function(const std::string& name) {
  auto it = handles_.find(name);
  if (it == handles_.end()) return;
  registry_.remove_provider(name);
  ledger_.release_all(name);
  active_before_failure_.erase(name);
  handles_.erase(it);
}

FunctionHandle& FunctionFramework::get(const std::string& name) {
  auto it = handles_.find(name);
  if (it == handles_.end()) throw Error(ErrorCode::kUnknownFunction, "no function '" + name + "'");
  return it->second;
}

const FunctionHandle* FunctionFramework::find(const std::string& name) const {
  auto it = handles_.find(name);
  return it == handles_.end() ? nullptr : &it->second;
}

std::vector<std::string> FunctionFramework::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : handles_) out.push_back(n);
  return out;
}

BundleState FunctionFramework::resolve(const std::string& name) {
  auto& h = get(name);
  if (!is_legal_transition(h.state, BundleState::kResolved)) {
    throw Error(ErrorCode::kIllegalTransition,
                name + ": " + std::string(to_string(h.state)) + " -> RESOLVED");
  }
  for (const auto& svc : h.spec.consumes) {
    if (!lookup_service(svc)) {
      throw Error(ErrorCode::kIllegalTransition, name + ": no ACTIVE provider for service '" + svc + "'");
    }
  }
  h.state = BundleState::kResolved;
  return h.state;
}

void FunctionFramework::publish(const FunctionHandle& h) {
  for (const auto& svc : h.spec.provides) registry_.add(svc, h.name, h.priority);
}

BundleState FunctionFramework::set_state(const std::string& name, BundleState target) {
  auto& h = get(name);
  if (target == BundleState::kResolved) return resolve(name);
  if (!is_legal_transition(h.state, target)) {
    throw Error(ErrorCode::kIllegalTransition,
                name + ": " + std::string(to_string(h.state)) + " -> " + std::string(to_string(target)));
  }
  if (target == BundleState::kActive && status_ != FrameworkStatus::kRunning) {
    throw Error(ErrorCode::kIllegalTransition, name + ": function framework is not running");
  }
  h.state = target;
  if (target == BundleState::kActive) {
    publish(h);
  } else {
    registry_.remove_provider(name);
    if (target == BundleState::kFaulted) ledger_.release_all(name);
  }
  return h.state;
}

std::optional<std::string> FunctionFramework::lookup_service(const std::string& interface) const {
  for (const auto& provider : registry_.providers(interface)) {
    const auto* h = find(provider);
    if (h != nullptr && h->state == BundleState::kActive) return provider;
  }
  return std::nullopt;
}

AcquireResult FunctionFramework::try_acquire(const std::string& name, Resource resource, std::uint64_t amount,
                                             SimTime now) {
  const auto& h = get(name);
  const bool management = h.pkg_type == PackageType::kManagement;
  if (!management && h.state != BundleState::kActive) return AcquireResult::Denied(DenyReason::kNotActive);
  return ledger_.try_acquire(name, management, h.quota, resource, amount, now);
}

void FunctionFramework::release(const std::string& name, Resource resource, std::uint64_t amount) {
  ledger_.release(name, resource, amount);
}

std::map<std::string, std::uint64_t> FunctionFramework::arbitrate(const std::vector<ArbitrationRequest>& contenders,
                                                                  Resource resource, SimTime /*now*/) const {
  std::vector<Contender> cs;
  std::map<std::string, std::uint64_t> out;
  for (const auto& req : contenders) {
    const auto* h = find(req.function);
    if (h == nullptr || h->state != BundleState::kActive) {
      out[req.function] = 0;
      continue;
    }
    const std::uint64_t quota = quota_for(h->quota, resource);
    const std::uint64_t held = ledger_.usage(h->name, resource);
    cs.push_back(Contender{h->name, h->priority, req.amount, quota > held ? quota - held : 0});
  }
  for (auto& [name, amount] : weighted_fair_allocation(ledger_.free_for_functions(resource), cs)) {
    out[name] = amount;
  }
  return out;
}

void FunctionFramework::fail() {
  status_ = FrameworkStatus::kFaulted;
  for (auto& [name, h] : handles_) {
    if (h.state == BundleState::kActive) active_before_failure_.insert(name);
    h.state = BundleState::kFaulted;
    registry_.remove_provider(name);
    ledger_.release_all(name);
  }
}

void FunctionFramework::stop() {
  for (auto& [name, h] : handles_) {
    if (h.state == BundleState::kActive) {
      active_before_failure_.insert(name);
      h.state = BundleState::kStopped;
      registry_.remove_provider(name);
    }
  }
  status_ = FrameworkStatus::kStopped;
}

std::vector<std::string> FunctionFramework::restart() {
  for (auto& [name, h] : handles_) {
    if (h.state == BundleState::kActive) active_before_failure_.insert(name);
    if (h.state != BundleState::kInstalled) {
      registry_.remove_provider(name);
      h.state = BundleState::kFaulted;  // so the FAULTED -> RESOLVED path applies uniformly
    }
  }
  status_ = FrameworkStatus::kRunning;

  // Providers first: repeat until no further function can be activated.
  std::set<std::string> pending = active_before_failure_;
  bool progress = true;
  while (progress && !pending.empty()) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      auto& h = get(*it);
      bool ready = true;
      for (const auto& svc : h.spec.consumes) ready = ready && lookup_service(svc).has_value();
      if (ready) {
        h.state = BundleState::kResolved;
        h.state = BundleState::kActive;
        publish(h);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  for (auto& [name, h] : handles_) {
    if (h.state == BundleState::kFaulted && !pending.contains(name)) h.state = BundleState::kResolved;
  }
  active_before_failure_.clear();
  return {pending.begin(), pending.end()};
}

ManagementFramework::ManagementFramework(ResourceLedger& ledger) : ledger_(ledger) {}

void ManagementFramework::register_component(const std::string& name) { components_.insert(name); }

AcquireResult ManagementFramework::try_acquire(const std::string& component, Resource resource,
                                               std::uint64_t amount, SimTime now) {
  ResourceQuota unlimited{~0ull, ~0ull, ~0ull, ~0ull, ~0ull};
  return ledger_.try_acquire("mgmt:" + component, true, unlimited, resource, amount, now);
}

bool management_framework_alive(const ManagementFramework& mf) { return mf.running(); }

}  // namespace irsm::framework
