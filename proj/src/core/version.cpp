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

#include "irsm/core/version.hpp"

#include <charconv>
#include <limits>

#include "irsm/core/error.hpp"

namespace irsm {

Version Version::parse(std::string_view text) {
  std::uint32_t parts[3] = {0, 0, 0};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = (i < 2) ? text.find('.', pos) : text.size();
    if (end == std::string_view::npos || end == pos) {
      throw Error(ErrorCode::kInvalidArgument, "bad version '" + std::string(text) + "'");
    }
    const std::string_view field = text.substr(pos, end - pos);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw Error(ErrorCode::kInvalidArgument, "bad version '" + std::string(text) + "'");
    }
    pos = end + 1;
  }
  return Version{parts[0], parts[1], parts[2]};
}

std::string Version::to_string() const {
  return std::to_string(major) + "." + std::to_string(minor) + "." + std::to_string(patch);
}

void to_json(nlohmann::json& j, const Version& v) { j = v.to_string(); }

void from_json(const nlohmann::json& j, Version& v) { v = Version::parse(j.get<std::string>()); }

}  // namespace irsm
