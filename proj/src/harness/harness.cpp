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

#include "qbench/harness/harness.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>

#include <sys/utsname.h>
#include <unistd.h>

#include "qbench/circuit/metrics.hpp"
#include "qbench/error.hpp"
#include "qbench/harness/subprocess.hpp"
#include "qbench/log.hpp"
#include "qbench/qasm/qasm.hpp"
#include "qbench/verify/verify.hpp"

namespace qbench::harness {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string status_name(TestStatus status) {
  switch (status) {
    case TestStatus::Passed: return "PASSED";
    case TestStatus::Skipped: return "SKIPPED";
    case TestStatus::Failed: return "FAILED";
    case TestStatus::XFail: return "XFAIL";
  }
  return "UNKNOWN";
}

std::optional<TestStatus> parse_status(std::string_view name) {
  for (auto s : {TestStatus::Passed, TestStatus::Skipped, TestStatus::Failed, TestStatus::XFail}) {
    if (status_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

EnvironmentStamp current_environment() {
  EnvironmentStamp env;
  char host[256] = {};
  if (gethostname(host, sizeof host - 1) == 0) env.hostname = host;
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) env.cpu = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page_size = sysconf(_SC_PAGESIZE);
  if (pages > 0 && page_size > 0) env.memory_bytes = static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page_size);
  utsname u{};
  if (uname(&u) == 0) env.os = std::string(u.sysname) + " " + u.release + " " + u.machine;
  env.versions["qbench"] = QBENCH_VERSION;
  return env;
}

// ---------------------------------------------------------------------------
// Worker processes

namespace {

constexpr double kGraceSeconds = 1.0;

Clock::time_point deadline_after(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

std::optional<wire::WireMessage> read_message(Subprocess& proc, Clock::time_point deadline, std::string& problem) {
  const auto line = proc.read_line(deadline);
  if (!line) {
    problem = proc.timed_out() ? "timeout" : "worker closed its output";
    return std::nullopt;
  }
  try {
    return wire::wire_decode(*line);
  } catch (const ProtocolError& e) {
    problem = e.what();
    return std::nullopt;
  }
}

// Gives the worker a grace period to exit, then clears its process group.
void finish(Subprocess& proc) {
  proc.close_stdin();
  proc.wait(deadline_after(kGraceSeconds));
  proc.kill_group();
}

struct Exchange {
  enum class Outcome { Reply, Timeout, Failure };
  Outcome outcome = Outcome::Failure;
  std::optional<wire::WireMessage> reply;
  std::string detail;
};

Exchange exchange(const WorkerConfig& worker, const wire::RunTest& request, double timeout_s,
                  const fs::path& stderr_path) {
  Exchange ex;
  const auto deadline = deadline_after(timeout_s);
  std::optional<Subprocess> proc;
  try {
    proc.emplace(worker.argv, stderr_path);
  } catch (const std::system_error& e) {
    ex.detail = std::string("worker spawn failed: ") + e.what();
    return ex;
  }
  std::string problem;
  auto hello = read_message(*proc, deadline, problem);
  if (hello && hello->type != wire::MessageType::Hello) problem = "worker did not start with hello";
  if (!hello || hello->type != wire::MessageType::Hello) {
    if (proc->timed_out()) {
      proc->kill_group();
      ex.outcome = Exchange::Outcome::Timeout;
      return ex;
    }
    proc->kill_group();
    ex.detail = "handshake failed: " + problem;
    return ex;
  }
  if (!proc->write_line(wire::wire_encode(wire::to_message(request)))) {
    proc->kill_group();
    ex.detail = "worker closed its input";
    return ex;
  }
  auto reply = read_message(*proc, deadline, problem);
  if (!reply) {
    const bool timed_out = proc->timed_out();
    proc->kill_group();
    if (timed_out) {
      ex.outcome = Exchange::Outcome::Timeout;
    } else {
      ex.detail = "no reply: " + problem;
    }
    return ex;
  }
  finish(*proc);
  ex.outcome = Exchange::Outcome::Reply;
  ex.reply = std::move(reply);
  return ex;
}

fs::path default_scratch_root() {
  static const fs::path root = [] {
    auto p = fs::temp_directory_path() / ("qbench-" + std::to_string(getpid()));
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path scratch_for(const RunConfig& config, const std::string& test_id) {
  std::string name = test_id;
  std::replace(name.begin(), name.end(), '/', '.');
  const fs::path root = config.scratch_dir.empty() ? default_scratch_root() : config.scratch_dir;
  const fs::path dir = fs::absolute(root / name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool is_transpile(Kind kind) { return kind == Kind::TranspileAbstract || kind == Kind::TranspileDevice; }

}  // namespace

Worker::Worker(WorkerConfig config) : config_(std::move(config)) {
  if (config_.argv.empty()) {
    auto options = std::move(config_.options);
    auto name = config_.name.empty() ? std::string("builtin") : config_.name;
    config_ = builtin_worker_config();
    config_.name = std::move(name);
    config_.options = std::move(options);
  }
}

WorkerConfig builtin_worker_config() {
  WorkerConfig w;
  w.name = "builtin";
  w.argv = {fs::read_symlink("/proc/self/exe").string(), "worker"};
  return w;
}

const wire::Hello& Worker::hello(double timeout_s) {
  if (hello_) return *hello_;
  if (!probe_error_.empty()) throw ProtocolError(probe_error_);
  try {
    Subprocess proc(config_.argv);
    std::string problem;
    auto msg = read_message(proc, deadline_after(timeout_s), problem);
    if (!msg) throw ProtocolError("no hello from worker " + config_.name + ": " + problem);
    hello_ = wire::as_hello(*msg);
    finish(proc);
  } catch (const std::exception& e) {
    probe_error_ = e.what();
    throw ProtocolError(probe_error_);
  }
  return *hello_;
}

// ---------------------------------------------------------------------------
// run_single

TestRecord run_single(const WorkoutDef& test, Worker& worker, const RunConfig& config, Skipfile& skipfile) {
  TestRecord rec;
  rec.test_id = test.test_id;
  rec.timeout_s = config.timeout_s;
  auto done = [&](TestStatus status, std::string detail) {
    rec.status = status;
    rec.detail = std::move(detail);
    return rec;
  };

  if (test.expected_fail) return done(TestStatus::XFail, "expected fail");
  if (skipfile.contains(test.test_id)) return done(TestStatus::Skipped, "listed in skipfile " + skipfile.path().string());

  const std::string kind = kind_name(test.kind);
  try {
    if (worker.hello(config.timeout_s).capabilities.count(kind) == 0) {
      return done(TestStatus::Skipped, "worker lacks capability " + kind);
    }
  } catch (const std::exception& e) {
    return done(TestStatus::Failed, std::string("worker probe failed: ") + e.what());
  }

  wire::RunTest request;
  request.test_id = test.test_id;
  request.kind = kind;
  request.timeout_s = config.timeout_s;
  for (const auto& [k, v] : worker.config().options) request.options[k] = v;

  std::optional<MaterializedInput> input;
  topology::CouplingMap coupling;
  std::optional<topology::Device> device;
  fs::path scratch;
  try {
    scratch = scratch_for(config, test.test_id);
    request.scratch_dir = scratch.string();
    if (is_transpile(test.kind)) {
      if (!test.target) return done(TestStatus::Failed, "transpile test without a target");
      input = materialize(test.input);
      const std::size_t width = input->circuit.num_qubits();
      const auto& spec = test.target->topology;
      if (spec.family == topology::Family::Device) {
        device = topology::load_device(spec.device_file);
        coupling = device->coupling;
      } else if (test.target->sized) {
        coupling = topology::build(spec);
      } else {
        coupling = topology::smallest_fit(spec.family, width);
      }
      if (width > coupling.num_nodes()) {
        return done(TestStatus::Skipped, "circuit needs " + std::to_string(width) + " qubits, target has " +
                                             std::to_string(coupling.num_nodes()));
      }
      fs::path qasm_path = test.input.path;
      if (test.input.source != InputDescriptor::Source::Qasm) {
        qasm_path = scratch / "input.qasm";
        qasm::write_qasm_file(input->circuit, qasm_path);
      }
      request.input = {{"qasm_path", fs::absolute(qasm_path).string()}};
      wire::Target target;
      target.topology = device ? device->name : coupling.name();
      target.num_nodes = coupling.num_nodes();
      target.edges = coupling.edges();
      target.basis.assign(test.target->basis.begin(), test.target->basis.end());
      target.opt_level = test.target->opt_level;
      request.target = std::move(target);
    } else {
      request.input = test.input.to_json();
    }
  } catch (const std::exception& e) {
    return done(TestStatus::Failed, std::string("input preparation failed: ") + e.what());
  }

  const auto ex = exchange(worker.config(), request, config.timeout_s, scratch / "worker.stderr");
  if (ex.outcome == Exchange::Outcome::Timeout) {
    try {
      skipfile.add(test.test_id, current_environment().hostname, config.timeout_s);
    } catch (const std::exception& e) {
      log::warn(e.what());
    }
    std::ostringstream msg;
    msg << "timed out after " << config.timeout_s << " s";
    return done(TestStatus::Failed, msg.str());
  }
  if (ex.outcome == Exchange::Outcome::Failure) return done(TestStatus::Failed, ex.detail);

  const auto& reply = *ex.reply;
  if (reply.type == wire::MessageType::Error) {
    return done(TestStatus::Failed, "worker error: " + wire::as_error(reply).message);
  }
  if (reply.type != wire::MessageType::Result) {
    return done(TestStatus::Failed, "unexpected " + wire::type_name(reply.type) + " reply");
  }
  wire::Result result;
  try {
    result = wire::as_result(reply);
  } catch (const ProtocolError& e) {
    return done(TestStatus::Failed, e.what());
  }
  if (result.test_id != test.test_id) return done(TestStatus::Failed, "result echoes test id " + result.test_id);
  if (!result.ok) return done(TestStatus::Failed, "worker reported failure");
  if (result.wall_time_s < 0.0) return done(TestStatus::Failed, "negative wall time");

  fs::path artifact_path(result.artifact_path);
  if (artifact_path.empty()) return done(TestStatus::Failed, "result has no artifact");
  if (artifact_path.is_relative()) artifact_path = scratch / artifact_path;

  circuit::Circuit artifact;
  try {
    artifact = qasm::load_qasm_file(artifact_path).circuit;
  } catch (const std::exception& e) {
    return done(TestStatus::Failed, std::string("artifact unreadable: ") + e.what());
  }
  if (is_transpile(test.kind)) {
    const auto report = verify::validate_structure(artifact, coupling, test.target->basis);
    if (!report.ok()) return done(TestStatus::Failed, "artifact fails validation: " + report.summary());
  }

  Metrics m;
  try {
    m.two_q_gates = circuit::two_qubit_gate_count(artifact);
    m.two_q_depth = circuit::two_qubit_depth(artifact);
  } catch (const MetricUndefined& e) {
    return done(TestStatus::Failed, std::string("artifact metrics undefined: ") + e.what());
  }
  m.op_counts = circuit::op_counts(artifact);
  m.num_qubits = input ? input->circuit.num_qubits() : artifact.num_qubits();
  m.wall_time_s = result.wall_time_s;
  m.qasm_load_time_s = result.qasm_load_time_s;
  if (device) {
    try {
      const double duration = transpiler::schedule_duration(artifact, device->gate_durations);
      m.estimated_execution_s = transpiler::execution_time_estimate(duration, config.shots, device->rep_delay);
    } catch (const TranspileError& e) {
      log::warn(test.test_id + ": no execution estimate: " + e.what());
    }
  }
  rec.metrics = std::move(m);
  return done(TestStatus::Passed, "");
}

// ---------------------------------------------------------------------------
// run_suite and result documents

StatusCounts count_statuses(const std::vector<TestRecord>& records) {
  StatusCounts c;
  for (const auto& r : records) {
    switch (r.status) {
      case TestStatus::Passed: ++c.passed; break;
      case TestStatus::Skipped: ++c.skipped; break;
      case TestStatus::Failed: ++c.failed; break;
      case TestStatus::XFail: ++c.xfail; break;
    }
  }
  return c;
}

RunResult run_suite(const std::vector<WorkoutDef>& tests, Worker& worker, const RunConfig& config,
                    const ProgressFn& progress) {
  RunResult result;
  result.timestamp = utc_timestamp();
  std::string compact = result.timestamp;
  compact.erase(std::remove_if(compact.begin(), compact.end(), [](char c) { return c == '-' || c == ':'; }),
                compact.end());
  result.run_id = worker.name() + "-" + compact;
  result.environment = current_environment();
  result.config = config_to_json(config);

  Skipfile skipfile(config.skip_file);
  std::vector<std::string> masked;
  std::set<std::string, std::less<>> unmatched(skipfile.ids().begin(), skipfile.ids().end());
  for (const auto& t : tests) {
    if (unmatched.erase(t.test_id) != 0) masked.push_back(t.test_id);
  }
  if (!masked.empty()) {
    std::string list;
    for (const auto& id : masked) list += "\n  " + id;
    log::warn("skipfile " + config.skip_file.string() + " masks " + std::to_string(masked.size()) + " tests:" + list);
  }
  for (const auto& id : unmatched) log::warn("skipfile entry matches no test: " + id);

  result.records.reserve(tests.size());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    TestRecord rec;
    try {
      rec = run_single(tests[i], worker, config, skipfile);
    } catch (const std::exception& e) {
      rec.test_id = tests[i].test_id;
      rec.timeout_s = config.timeout_s;
      rec.status = TestStatus::Failed;
      rec.detail = std::string("harness error: ") + e.what();
    }
    if (progress) progress(i, tests.size(), rec);
    result.records.push_back(std::move(rec));
  }

  result.environment.versions["worker"] = worker.name();
  try {
    if (worker.probed()) result.environment.versions["worker_version"] = worker.hello(config.timeout_s).version;
  } catch (const std::exception&) {
  }
  return result;
}

namespace {

ordered_json metrics_to_json(const Metrics& m) {
  ordered_json j;
  j["two_q_gates"] = m.two_q_gates;
  j["two_q_depth"] = m.two_q_depth;
  j["wall_time_s"] = m.wall_time_s;
  j["qasm_load_time_s"] = m.qasm_load_time_s ? ordered_json(*m.qasm_load_time_s) : ordered_json(nullptr);
  j["num_qubits"] = m.num_qubits;
  j["op_counts"] = m.op_counts;
  j["estimated_execution_s"] =
      m.estimated_execution_s ? ordered_json(*m.estimated_execution_s) : ordered_json(nullptr);
  return j;
}

std::optional<double> optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

ordered_json result_to_json(const RunResult& result) {
  ordered_json doc;
  doc["run_id"] = result.run_id;
  doc["timestamp"] = result.timestamp;
  doc["environment"] = {{"hostname", result.environment.hostname},
                        {"cpu", result.environment.cpu},
                        {"memory_bytes", result.environment.memory_bytes},
                        {"os", result.environment.os},
                        {"versions", result.environment.versions}};
  doc["config"] = ordered_json::parse(result.config.dump());
  ordered_json records = ordered_json::array();
  for (const auto& r : result.records) {
    ordered_json j;
    j["test_id"] = r.test_id;
    j["status"] = status_name(r.status);
    j["timeout_s"] = r.timeout_s;
    j["metrics"] = r.metrics ? metrics_to_json(*r.metrics) : ordered_json(nullptr);
    j["detail"] = r.detail.empty() ? ordered_json(nullptr) : ordered_json(r.detail);
    records.push_back(std::move(j));
  }
  doc["records"] = std::move(records);
  const auto counts = count_statuses(result.records);
  doc["summary"] = {{"PASSED", counts.passed},
                    {"SKIPPED", counts.skipped},
                    {"FAILED", counts.failed},
                    {"XFAIL", counts.xfail},
                    {"total", counts.total()}};
  return doc;
}

RunResult result_from_json(const json& doc) {
  RunResult r;
  try {
    r.run_id = doc.at("run_id").get<std::string>();
    r.timestamp = doc.value("timestamp", std::string{});
    if (doc.contains("environment")) {
      const auto& e = doc.at("environment");
      r.environment.hostname = e.value("hostname", std::string{});
      r.environment.cpu = e.value("cpu", std::string{});
      r.environment.memory_bytes = e.value("memory_bytes", std::uint64_t{0});
      r.environment.os = e.value("os", std::string{});
      if (e.contains("versions")) r.environment.versions = e.at("versions").get<std::map<std::string, std::string>>();
    }
    r.config = doc.value("config", json::object());
    for (const auto& j : doc.at("records")) {
      TestRecord rec;
      rec.test_id = j.at("test_id").get<std::string>();
      const auto status = parse_status(j.at("status").get<std::string>());
      if (!status) throw ReportError("unknown status in record " + rec.test_id);
      rec.status = *status;
      rec.timeout_s = j.value("timeout_s", 0.0);
      if (j.contains("detail") && j.at("detail").is_string()) rec.detail = j.at("detail").get<std::string>();
      if (j.contains("metrics") && j.at("metrics").is_object()) {
        const auto& mj = j.at("metrics");
        Metrics m;
        m.two_q_gates = mj.at("two_q_gates").get<std::size_t>();
        m.two_q_depth = mj.at("two_q_depth").get<std::size_t>();
        m.wall_time_s = mj.at("wall_time_s").get<double>();
        m.qasm_load_time_s = optional_number(mj, "qasm_load_time_s");
        m.num_qubits = mj.value("num_qubits", std::size_t{0});
        if (mj.contains("op_counts")) m.op_counts = mj.at("op_counts").get<std::map<std::string, std::size_t>>();
        m.estimated_execution_s = optional_number(mj, "estimated_execution_s");
        rec.metrics = std::move(m);
      }
      if ((rec.status == TestStatus::Passed) != rec.metrics.has_value()) {
        throw ReportError("record " + rec.test_id + ": metrics must be present exactly when PASSED");
      }
      r.records.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw ReportError(std::string("malformed result document: ") + e.what());
  }
  return r;
}

void write_result(const RunResult& result, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ReportError("cannot write " + path.string());
  out << result_to_json(result).dump(2) << '\n';
}

RunResult load_result(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ReportError("cannot read result file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ReportError("malformed result file " + path.string() + ": " + e.what());
  }
  return result_from_json(doc);
}

}  // namespace qbench::harness
