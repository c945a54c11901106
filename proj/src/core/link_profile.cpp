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

#include "irsm/core/link_profile.hpp"

namespace irsm {

std::vector<LinkProfile> builtin_link_profiles() {
  return {
      {"FIBER", 10'000'000, millis(2), 0.0001},
      {"XDSL", 250'000, millis(20), 0.001},
      {"UMTS", 40'000, millis(80), 0.005},
      {"GPRS", 2'000, millis(300), 0.02},
  };
}

std::optional<LinkProfile> find_builtin_profile(const std::string& name) {
  for (auto& p : builtin_link_profiles()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace irsm
