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

#include <optional>
#include <string>
#include <vector>

#include "irsm/center/repository.hpp"
#include "irsm/core/state.hpp"

namespace irsm::center {

// Assigned package names with dependencies before dependents; independent
// packages in ascending name order. Dependencies outside the assignment set
// are ignored; a cycle is broken by falling back to name order.
std::vector<std::string> dependency_order(const DesiredState& desired);

// The reconciliation plan that takes `reported` (nullopt: nothing known,
// e.g. fresh or replaced hardware) to `desired`:
//   Removes (obsolete packages, name asc)
//   Installs (changed or missing versions, dependency order)
//   Configures (applied version differs from desired, app name asc)
//   Deactivates (reverse dependency order)
//   Activates (dependency order)
// Installing a new version leaves the package inactive, so a reinstalled
// ACTIVE package is activated again.
ActionList compute_actions(const DesiredState& desired, const std::optional<ReportedState>& reported);

// Adds name@version to `desired`. For ACTIVE assignments the dependency
// closure is resolved against the repository: missing dependencies are
// assigned at the newest version meeting the bound, too-old ones are
// upgraded, inactive ones activated. Throws Error(kUnknownPackage) or
// Error(kDependencyUnsatisfiable) without modifying `desired`.
DesiredState assign_with_closure(DesiredState desired, const PackageRepository& repo, const std::string& name,
                                 const Version& version, Activation activation);

}  // namespace irsm::center
