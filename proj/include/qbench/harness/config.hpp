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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbench/topology/coupling_map.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::harness {

inline constexpr double kDefaultTimeout = 3600.0;

struct WorkerConfig {
  std::string name;
  /// Command line split into words. Empty for the builtin worker, which runs
  /// the current executable.
  std::vector<std::string> argv;
  /// Remaining keys of the section, forwarded in every run_test request.
  std::map<std::string, std::string> options;
};

struct RunConfig {
  double timeout_s = kDefaultTimeout;
  std::vector<topology::Family> topologies{topology::Family::AllToAll, topology::Family::Square,
                                           topology::Family::HeavyHex, topology::Family::Linear};
  transpiler::Basis basis = transpiler::default_basis();
  std::filesystem::path device_file = std::filesystem::path(QBENCH_DATA_DIR) / "devices" / "device_133.json";
  int opt_level = 1;
  std::filesystem::path skip_file = "skipfile.txt";
  std::filesystem::path workouts_file = std::filesystem::path(QBENCH_DATA_DIR) / "workouts" / "workouts.json";
  /// Per-test scratch directories are created below this one. Empty means a
  /// fresh directory under the system temp path.
  std::filesystem::path scratch_dir;
  std::size_t shots = transpiler::kDefaultShots;
  std::map<std::string, WorkerConfig> workers;
  /// Each test runs once.
  static constexpr bool single_execution = true;
};

/// Sectioned key = value text with [general], [transpile] and [worker.<name>]
/// sections. Relative paths resolve against `base_dir`. Unknown keys and
/// sections are logged as warnings.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
/// Throws ConfigError when the file is missing.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const RunConfig& config);

/// Splits a command line on blanks. Double quotes group words and a backslash
/// escapes the next character.
std::vector<std::string> split_command(const std::string& line);

}  // namespace qbench::harness
