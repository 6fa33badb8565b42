/* Copyright 2026 The cam-forge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "camforge/error.h"

namespace camforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kEmptyMap: return "EmptyMap";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kClassSetMismatch: return "ClassSetMismatch";
    case ErrorCode::kEmptyStack: return "EmptyStack";
    case ErrorCode::kInvalidValue: return "InvalidValue";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kInvalidArchitecture: return "InvalidArchitecture";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kStaleCache: return "StaleCache";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kIndivisibleDimensions: return "IndivisibleDimensions";
    case ErrorCode::kInvalidSchedule: return "InvalidSchedule";
    case ErrorCode::kPlacementFailure: return "PlacementFailure";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedDtype: return "UnsupportedDtype";
    case ErrorCode::kHeaderParse: return "HeaderParse";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kBadPng: return "BadPng";
    case ErrorCode::kDepthMismatch: return "DepthMismatch";
    case ErrorCode::kBadArchive: return "BadArchive";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kLockHeld: return "LockHeld";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidSchedule:
      return 2;
    case ErrorCode::kIoError:
      return 3;
    case ErrorCode::kBadMagic:
    case ErrorCode::kUnsupportedDtype:
    case ErrorCode::kHeaderParse:
    case ErrorCode::kTruncatedPayload:
    case ErrorCode::kBadPng:
    case ErrorCode::kDepthMismatch:
    case ErrorCode::kBadArchive:
      return 4;
    case ErrorCode::kEmptyMap:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kClassSetMismatch:
    case ErrorCode::kEmptyStack:
    case ErrorCode::kShapeError:
    case ErrorCode::kStaleCache:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kIndivisibleDimensions:
      return 5;
    case ErrorCode::kNonFiniteInput:
    case ErrorCode::kInvalidValue:
    case ErrorCode::kLabelOutOfRange:
    case ErrorCode::kEmptyMatrix:
    case ErrorCode::kDomainError:
      return 6;
    case ErrorCode::kInvalidArchitecture:
    case ErrorCode::kEmptyDataset:
      return 7;
    case ErrorCode::kPlacementFailure:
      return 8;
    case ErrorCode::kLockHeld:
      return 9;
  }
  return 1;
}

}  // namespace camforge
