// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <sys/types.h>

namespace qbench::harness {

using Clock = std::chrono::steady_clock;

/// A child process in its own process group with piped stdin and stdout.
/// Stderr goes to a file when one is given. Destruction kills whatever is
/// left of the group.
class Subprocess {
 public:
  /// Throws std::system_error when the program cannot be started.
  Subprocess(const std::vector<std::string>& argv, const std::filesystem::path& stderr_path = {});
  ~Subprocess();
  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  pid_t pid() const noexcept { return pid_; }

  /// Reads one line (newline stripped). Nullopt on end of stream or when the
  /// deadline passes first; timed_out() tells them apart.
  std::optional<std::string> read_line(Clock::time_point deadline);
  bool timed_out() const noexcept { return timed_out_; }

  /// False when the child has closed its end.
  bool write_line(const std::string& line);
  void close_stdin();

  /// Waits for exit until the deadline. Returns the wait status or nullopt.
  std::optional<int> wait(Clock::time_point deadline);
  /// SIGKILL to the whole process group, then reaps the child if needed.
  void kill_group();

 private:
  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  std::string buffer_;
  bool eof_ = false;
  bool timed_out_ = false;
  bool reaped_ = false;
};

}  // namespace qbench::harness
