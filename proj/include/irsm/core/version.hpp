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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace irsm {

// Dotted numeric triple "X.Y.Z", ordered component-wise.
struct Version {
  std::uint32_t major = 0;
  std::uint32_t minor = 0;
  std::uint32_t patch = 0;

  auto operator<=>(const Version&) const = default;

  // Throws Error(kInvalidArgument) on anything but three base-10 components.
  static Version parse(std::string_view text);
  std::string to_string() const;
};

void to_json(nlohmann::json& j, const Version& v);
void from_json(const nlohmann::json& j, Version& v);

}  // namespace irsm
