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

#include <stdexcept>
#include <string>
#include <string_view>

namespace irsm {

enum class ErrorCode {
  kMalformedManifest,
  kInvariantViolation,
  kMalformedArchive,
  kMalformedFrame,
  kUnknownStation,
  kHardwareIdInUse,
  kDuplicateVersionConflict,
  kUnknownPackage,
  kDependencyUnsatisfiable,
  kNoWorkerAvailable,
  kUnknownWorker,
  kWorkerCrashed,
  kCorruptSnapshot,
  kDuplicateName,
  kUnknownFunction,
  kIllegalTransition,
  kFrameTooLarge,
  kLinkDown,
  kUnknownTarget,
  kScenarioParse,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// All recoverable failures in the library surface as this exception; the
// code identifies the contract violation and what() carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace irsm
