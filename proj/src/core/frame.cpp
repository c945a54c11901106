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

#include "irsm/core/frame.hpp"

#include "irsm/core/error.hpp"

namespace irsm {

std::string encode_frame(const nlohmann::json& body) {
  const std::string text = body.dump();
  if (text.size() > kMaxFrameBody) throw Error(ErrorCode::kMalformedFrame, "frame body too large");
  const auto n = static_cast<std::uint32_t>(text.size());
  std::string out;
  out.reserve(4 + text.size());
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out += text;
  return out;
}

FrameKind frame_kind(const nlohmann::json& body) {
  auto it = body.find("kind");
  if (it == body.end() || !it->is_string()) throw Error(ErrorCode::kMalformedFrame, "frame has no kind");
  auto kind = enum_from_string<FrameKind>(it->get<std::string>());
  if (!kind) throw Error(ErrorCode::kMalformedFrame, "unknown frame kind '" + it->get<std::string>() + "'");
  return *kind;
}

void FrameDecoder::feed(std::string_view bytes) {
  if (consumed_ > 0 && consumed_ == buffer_.size()) {
    buffer_.clear();
    consumed_ = 0;
  }
  buffer_.append(bytes);
}

std::optional<nlohmann::json> FrameDecoder::next() {
  if (buffered() < 4) return std::nullopt;
  const auto* p = reinterpret_cast<const unsigned char*>(buffer_.data() + consumed_);
  const std::uint32_t n = (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
                          (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
  if (n > kMaxFrameBody) throw Error(ErrorCode::kMalformedFrame, "frame length exceeds limit");
  if (buffered() < 4 + static_cast<std::size_t>(n)) return std::nullopt;
  const std::string_view body(buffer_.data() + consumed_ + 4, n);
  consumed_ += 4 + n;
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kMalformedFrame, "frame body is not a JSON object");
  }
  if (consumed_ > 4096 && consumed_ * 2 > buffer_.size()) {
    buffer_.erase(0, consumed_);
    consumed_ = 0;
  }
  return doc;
}

}  // namespace irsm
