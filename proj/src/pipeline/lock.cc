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
#include "camforge/pipeline/lock.h"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "camforge/error.h"
#include "camforge/io/npy.h"

namespace camforge::pipeline {
namespace fs = std::filesystem;

namespace {

bool OwnerAlive(const fs::path& path) {
  std::string text;
  try {
    text = io::ReadFileBytes(path);
  } catch (const Error&) {
    return false;
  }
  const long pid = std::strtol(text.c_str(), nullptr, 10);
  if (pid <= 0) return false;
  return kill(static_cast<pid_t>(pid), 0) == 0 || errno == EPERM;
}

}  // namespace

OutputLock::OutputLock(const fs::path& dir) : path_(dir / kLockFileName) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + dir.string() + ": " + ec.message());
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int fd = open(path_.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
    if (fd >= 0) {
      const std::string pid = std::to_string(getpid()) + "\n";
      const ssize_t n = write(fd, pid.data(), pid.size());
      close(fd);
      if (n != static_cast<ssize_t>(pid.size())) {
        fs::remove(path_, ec);
        throw Error(ErrorCode::kIoError, "cannot write " + path_.string());
      }
      return;
    }
    if (errno != EEXIST) {
      throw Error(ErrorCode::kIoError,
                  "cannot create " + path_.string() + ": " +
                      std::strerror(errno));
    }
    if (OwnerAlive(path_)) break;
    fs::remove(path_, ec);
  }
  throw Error(ErrorCode::kLockHeld,
              dir.string() + " is in use by another run (" + path_.string() +
                  ")");
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

}  // namespace camforge::pipeline
