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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "irsm/core/manifest.hpp"
#include "irsm/framework/arbitration.hpp"
#include "irsm/framework/ledger.hpp"

namespace irsm::framework {

enum class BundleState { kInstalled, kResolved, kActive, kStopped, kFaulted };
std::string_view to_string(BundleState s);

// INSTALLED->RESOLVED->ACTIVE<->STOPPED, any->FAULTED, FAULTED->RESOLVED.
bool is_legal_transition(BundleState from, BundleState to);

// Service wiring of a function, declared by its behaviour script.
struct FunctionSpec {
  std::vector<std::string> provides;
  std::vector<std::string> consumes;

  bool operator==(const FunctionSpec&) const = default;
};

struct FunctionHandle {
  std::string name;
  Version version;
  BundleState state = BundleState::kInstalled;
  int priority = 0;
  PackageType pkg_type = PackageType::kFunction;
  ResourceQuota quota;
  FunctionSpec spec;
};

// Interface name -> providers ordered by priority desc, then name asc.
class ServiceRegistry {
 public:
  void add(const std::string& interface, const std::string& provider, int priority);
  void remove_provider(const std::string& provider);
  std::optional<std::string> first(const std::string& interface) const;
  std::vector<std::string> providers(const std::string& interface) const;

 private:
  struct Entry {
    int priority;
    std::string provider;
    bool operator<(const Entry& o) const {
      return priority != o.priority ? priority > o.priority : provider < o.provider;
    }
  };
  std::map<std::string, std::set<Entry>> services_;
};

enum class FrameworkStatus { kRunning, kFaulted, kStopped };
std::string_view to_string(FrameworkStatus s);

struct ArbitrationRequest {
  std::string function;
  std::uint64_t amount = 0;
};

// Service-oriented host for function bundles. Every resource access goes
// through the shared ledger.
class FunctionFramework {
 public:
  explicit FunctionFramework(ResourceLedger& ledger);

  // Throws Error(kDuplicateName).
  const FunctionHandle& register_function(const PackageManifest& manifest, FunctionSpec spec);
  // Stops the function, withdraws its services and releases its resources.
  void unregister_function(const std::string& name);

  // INSTALLED or FAULTED -> RESOLVED when every consumed service has an
  // ACTIVE provider. Throws Error(kIllegalTransition) otherwise.
  BundleState resolve(const std::string& name);

  // ACTIVE publishes the function's services; STOPPED and FAULTED withdraw
  // them in the same step. Throws Error(kIllegalTransition) or
  // Error(kUnknownFunction).
  BundleState set_state(const std::string& name, BundleState target);

  std::optional<std::string> lookup_service(const std::string& interface) const;

  AcquireResult try_acquire(const std::string& name, Resource resource, std::uint64_t amount, SimTime now);
  void release(const std::string& name, Resource resource, std::uint64_t amount);

  // Splits what functions may still take of `resource` among the contenders.
  std::map<std::string, std::uint64_t> arbitrate(const std::vector<ArbitrationRequest>& contenders,
                                                 Resource resource, SimTime now) const;

  const FunctionHandle* find(const std::string& name) const;
  std::vector<std::string> names() const;

  FrameworkStatus status() const { return status_; }
  // Framework-wide failure: every function is FAULTED and all services vanish.
  void fail();
  // Brings the framework back; functions ACTIVE before the failure are
  // resolved and re-activated where possible. Returns names left inactive.
  std::vector<std::string> restart();
  void stop();

 private:
  FunctionHandle& get(const std::string& name);
  void publish(const FunctionHandle& h);

  ResourceLedger& ledger_;
  ServiceRegistry registry_;
  std::map<std::string, FunctionHandle> handles_;
  std::set<std::string> active_before_failure_;
  FrameworkStatus status_ = FrameworkStatus::kRunning;
};

// Hosts management components in isolation from the function framework; it
// holds no reference to it, so function failures cannot reach it.
class ManagementFramework {
 public:
  explicit ManagementFramework(ResourceLedger& ledger);

  void register_component(const std::string& name);
  bool running() const { return running_; }
  const std::set<std::string>& components() const { return components_; }

  // Management principals may draw on the reserved share.
  AcquireResult try_acquire(const std::string& component, Resource resource, std::uint64_t amount, SimTime now);

  void halt() { running_ = false; }
  void start() { running_ = true; }

 private:
  ResourceLedger& ledger_;
  std::set<std::string> components_;
  bool running_ = true;
};

bool management_framework_alive(const ManagementFramework& mf);

}  // namespace irsm::framework
