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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbench/harness/config.hpp"
#include "qbench/harness/protocol.hpp"
#include "qbench/harness/skipfile.hpp"
#include "qbench/harness/workout.hpp"

namespace qbench::harness {

enum class TestStatus { Passed, Skipped, Failed, XFail };

/// PASSED, SKIPPED, FAILED, XFAIL.
std::string status_name(TestStatus status);
std::optional<TestStatus> parse_status(std::string_view name);

struct Metrics {
  std::size_t two_q_gates = 0;
  std::size_t two_q_depth = 0;
  double wall_time_s = 0.0;
  std::optional<double> qasm_load_time_s;
  std::size_t num_qubits = 0;
  std::map<std::string, std::size_t> op_counts;
  std::optional<double> estimated_execution_s;
};

struct TestRecord {
  std::string test_id;
  TestStatus status = TestStatus::Skipped;
  double timeout_s = 0.0;
  /// Present iff PASSED.
  std::optional<Metrics> metrics;
  std::string detail;
};

struct EnvironmentStamp {
  std::string hostname;
  std::string cpu;
  std::uint64_t memory_bytes = 0;
  std::string os;
  std::map<std::string, std::string> versions;
};

/// Host name, CPU model, physical memory, kernel and the qbench version.
EnvironmentStamp current_environment();

/// A worker command plus the capabilities its hello announced, probed once on
/// first use.
class Worker {
 public:
  explicit Worker(WorkerConfig config);

  const std::string& name() const noexcept { return config_.name; }
  const WorkerConfig& config() const noexcept { return config_; }

  /// Spawns the worker once to read its hello. Throws ProtocolError or
  /// std::system_error when that fails; the failure is cached.
  const wire::Hello& hello(double timeout_s);
  bool probed() const noexcept { return hello_.has_value() || !probe_error_.empty(); }

 private:
  WorkerConfig config_;
  std::optional<wire::Hello> hello_;
  std::string probe_error_;
};

/// The builtin worker: the running executable with the `worker` verb.
WorkerConfig builtin_worker_config();

/// Runs one test. Status precedence: XFAIL, then SKIPPED for a skipfile
/// entry, a missing capability or a circuit wider than the device, then
/// FAILED for a timeout, a worker error or an artifact that fails
/// validation, otherwise PASSED with metrics computed from the artifact.
/// Timeouts are appended to the skipfile.
TestRecord run_single(const WorkoutDef& test, Worker& worker, const RunConfig& config, Skipfile& skipfile);

struct StatusCounts {
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::size_t xfail = 0;
  std::size_t total() const noexcept { return passed + skipped + failed + xfail; }
  friend bool operator==(const StatusCounts&, const StatusCounts&) = default;
};

StatusCounts count_statuses(const std::vector<TestRecord>& records);

struct RunResult {
  std::string run_id;
  std::string timestamp;
  EnvironmentStamp environment;
  nlohmann::json config = nlohmann::json::object();
  std::vector<TestRecord> records;
};

using ProgressFn = std::function<void(std::size_t index, std::size_t total, const TestRecord&)>;

/// Runs the tests in order, one worker process at a time.
RunResult run_suite(const std::vector<WorkoutDef>& tests, Worker& worker, const RunConfig& config,
                    const ProgressFn& progress = {});

nlohmann::ordered_json result_to_json(const RunResult& result);
RunResult result_from_json(const nlohmann::json& doc);
void write_result(const RunResult& result, const std::filesystem::path& path);
/// Throws ReportError for unreadable or malformed documents.
RunResult load_result(const std::filesystem::path& path);

/// UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace qbench::harness
