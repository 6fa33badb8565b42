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
#ifndef CAMFORGE_PIPELINE_LOCK_H_
#define CAMFORGE_PIPELINE_LOCK_H_

#include <filesystem>

namespace camforge::pipeline {

inline constexpr char kLockFileName[] = ".cam-forge.lock";

// Exclusive claim on an output directory for the lifetime of the object.
// The directory is created if needed. A lock left behind by a process that
// no longer exists is taken over; a live one raises LockHeld.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& dir);
  ~OutputLock();

  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

}  // namespace camforge::pipeline

#endif  // CAMFORGE_PIPELINE_LOCK_H_
