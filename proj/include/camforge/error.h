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
#ifndef CAMFORGE_ERROR_H_
#define CAMFORGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace camforge {

// Every failure raised by the library carries one of these codes. The CLI
// maps them onto process exit codes (see ExitCodeFor).
enum class ErrorCode {
  // cam-core
  kNonFiniteInput,
  kEmptyMap,
  kDimensionMismatch,
  kClassSetMismatch,
  kEmptyStack,
  kInvalidValue,
  // metrics
  kLabelOutOfRange,
  kEmptyMatrix,
  // orand-model
  kInvalidArchitecture,
  kShapeError,
  kDomainError,
  kStaleCache,
  kShapeMismatch,
  kEmptyDataset,
  // curriculum
  kIndivisibleDimensions,
  kInvalidSchedule,
  // synthgen
  kPlacementFailure,
  // formats
  kBadMagic,
  kUnsupportedDtype,
  kHeaderParse,
  kTruncatedPayload,
  kBadPng,
  kDepthMismatch,
  kBadArchive,
  // pipeline
  kConfigError,
  kIoError,
  kLockHeld,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Process exit code taxonomy used by the CLI:
//   0 success
//   2 configuration / usage error
//   3 filesystem I/O error
//   4 malformed input file (NPY, PNG, NPZ)
//   5 shape or dimension contract violation
//   6 value-domain violation (non-finite values, out-of-range labels, ...)
//   7 training failure (empty dataset, invalid architecture)
//   8 synthetic corpus generation failure
//   9 output directory locked by another run
int ExitCodeFor(ErrorCode code);

}  // namespace camforge

#endif  // CAMFORGE_ERROR_H_
