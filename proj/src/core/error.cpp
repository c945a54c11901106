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

#include "irsm/core/error.hpp"

namespace irsm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kMalformedArchive: return "MalformedArchive";
    case ErrorCode::kMalformedFrame: return "MalformedFrame";
    case ErrorCode::kUnknownStation: return "UnknownStation";
    case ErrorCode::kHardwareIdInUse: return "HardwareIdInUse";
    case ErrorCode::kDuplicateVersionConflict: return "DuplicateVersionConflict";
    case ErrorCode::kUnknownPackage: return "UnknownPackage";
    case ErrorCode::kDependencyUnsatisfiable: return "DependencyUnsatisfiable";
    case ErrorCode::kNoWorkerAvailable: return "NoWorkerAvailable";
    case ErrorCode::kUnknownWorker: return "UnknownWorker";
    case ErrorCode::kWorkerCrashed: return "WorkerCrashed";
    case ErrorCode::kCorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kUnknownFunction: return "UnknownFunction";
    case ErrorCode::kIllegalTransition: return "IllegalTransition";
    case ErrorCode::kFrameTooLarge: return "FrameTooLarge";
    case ErrorCode::kLinkDown: return "LinkDown";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kScenarioParse: return "ScenarioParse";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace irsm
