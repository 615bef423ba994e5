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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "qbench/harness/config.hpp"
#include "qbench/harness/workout.hpp"

namespace qbench::testing {

namespace fs = std::filesystem;

/// A fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("qbench_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + "_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

inline std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

inline harness::WorkerConfig stub_worker(const std::vector<std::string>& extra, const std::string& name = "stub") {
  harness::WorkerConfig w;
  w.name = name;
  w.argv = {QBENCH_STUB_WORKER};
  w.argv.insert(w.argv.end(), extra.begin(), extra.end());
  return w;
}

inline harness::WorkerConfig cli_builtin_worker() {
  harness::WorkerConfig w;
  w.name = "builtin";
  w.argv = {QBENCH_CLI, "worker"};
  return w;
}

inline harness::RunConfig test_config(const TempDir& dir, double timeout_s = 30.0) {
  harness::RunConfig c;
  c.timeout_s = timeout_s;
  c.skip_file = dir / "skipfile.txt";
  c.scratch_dir = dir / "scratch";
  return c;
}

inline harness::InputDescriptor generator_input(const std::string& name, nlohmann::json args) {
  harness::InputDescriptor d;
  d.source = harness::InputDescriptor::Source::Generator;
  d.generator = name;
  d.args = std::move(args);
  return d;
}

inline harness::WorkoutDef transpile_test(const std::string& id, harness::InputDescriptor input,
                                          const topology::TopologySpec& spec, bool sized = true) {
  harness::WorkoutDef t;
  t.test_id = id;
  t.kind = spec.family == topology::Family::Device ? harness::Kind::TranspileDevice : harness::Kind::TranspileAbstract;
  t.suite = "fixture";
  t.input = std::move(input);
  t.target = harness::TargetDescriptor{spec, sized, transpiler::default_basis(), 1};
  return t;
}

inline harness::WorkoutDef construct_test(const std::string& id, harness::InputDescriptor input) {
  harness::WorkoutDef t;
  t.test_id = id;
  t.kind = harness::Kind::Construct;
  t.suite = "fixture";
  t.input = std::move(input);
  return t;
}

/// Runs a shell command, returning its exit code and combined output.
inline std::pair<int, std::string> run_command(const std::string& command) {
  std::string output;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

/// True when the process is gone or a zombie.
inline bool process_dead(pid_t pid) {
  std::ifstream stat("/proc/" + std::to_string(pid) + "/stat");
  if (!stat) return true;
  std::string line;
  std::getline(stat, line);
  const auto close = line.rfind(')');
  return close != std::string::npos && close + 2 < line.size() && (line[close + 2] == 'Z' || line[close + 2] == 'X');
}

}  // namespace qbench::testing
