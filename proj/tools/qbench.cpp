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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbench/circuit/metrics.hpp"
#include "qbench/error.hpp"
#include "qbench/harness/builtin_worker.hpp"
#include "qbench/harness/harness.hpp"
#include "qbench/qasm/qasm.hpp"
#include "qbench/report/report.hpp"
#include "qbench/topology/coupling_map.hpp"
#include "qbench/transpiler/transpiler.hpp"
#include "qbench/verify/verify.hpp"

namespace fs = std::filesystem;
using namespace qbench;

namespace {

enum Exit : int { kOk = 0, kViolations = 1, kUsage = 2, kInternal = 3 };

const fs::path kDefaultConfig = fs::path(QBENCH_DATA_DIR) / "default.conf";
const fs::path kDefaultDevice = fs::path(QBENCH_DATA_DIR) / "devices" / "device_133.json";

harness::RunConfig config_from(const std::string& path) {
  if (!path.empty()) return harness::load_config(path);
  if (fs::exists(kDefaultConfig)) return harness::load_config(kDefaultConfig);
  return {};
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct RunArgs {
  std::string worker = "builtin";
  std::string config;
  std::string output;
  std::optional<double> timeout;
  std::string skip_file;
  std::string workouts;
  std::vector<std::string> filters;
  bool strict = false;
};

int cmd_run(const RunArgs& a) {
  auto config = config_from(a.config);
  if (a.timeout) {
    if (!(*a.timeout > 0.0)) throw ConfigError("--timeout must be positive");
    config.timeout_s = *a.timeout;
  }
  if (!a.skip_file.empty()) config.skip_file = a.skip_file;
  if (!a.workouts.empty()) config.workouts_file = a.workouts;

  harness::WorkerConfig wc;
  if (auto it = config.workers.find(a.worker); it != config.workers.end()) {
    wc = it->second;
  } else if (a.worker == "builtin") {
    wc = harness::builtin_worker_config();
  } else {
    throw ConfigError("unknown worker '" + a.worker + "'");
  }
  harness::Worker worker(wc);

  auto tests = harness::discover_tests(config);
  if (!a.filters.empty()) {
    std::erase_if(tests, [&](const harness::WorkoutDef& t) {
      for (const auto& f : a.filters) {
        if (t.test_id.find(f) != std::string::npos) return false;
      }
      return true;
    });
  }

  const auto result = harness::run_suite(tests, worker, config, [](std::size_t i, std::size_t n, const auto& rec) {
    std::cerr << '[' << (i + 1) << '/' << n << "] " << harness::status_name(rec.status) << ' ' << rec.test_id;
    if (!rec.detail.empty() && rec.status != harness::TestStatus::Passed) std::cerr << " (" << rec.detail << ')';
    std::cerr << '\n';
  });
  const fs::path out = a.output.empty() ? fs::path(result.run_id + ".json") : fs::path(a.output);
  harness::write_result(result, out);

  const auto counts = harness::count_statuses(result.records);
  std::cout << report::render_status_summary(counts) << "wrote " << out.string() << '\n';
  return a.strict && counts.failed != 0 ? kViolations : kOk;
}

int cmd_list(const std::string& config_path, const std::string& workouts) {
  auto config = config_from(config_path);
  if (!workouts.empty()) config.workouts_file = workouts;
  for (const auto& t : harness::discover_tests(config)) {
    std::cout << t.test_id << '\t' << harness::kind_name(t.kind) << (t.expected_fail ? "\txfail" : "") << '\n';
  }
  return kOk;
}

struct GenerateArgs {
  std::string family;
  std::size_t qubits = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> depth;
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  nlohmann::json args{{"n", a.qubits}};
  if (a.seed) {
    if (!harness::generator_accepts(a.family, "seed")) throw GeneratorError(a.family + " takes no seed");
    args["seed"] = *a.seed;
  } else if (harness::generator_accepts(a.family, "seed")) {
    args["seed"] = 0;
  }
  if (a.depth) args["depth"] = *a.depth;
  const auto circuit = harness::run_generator(a.family, args);
  write_text(qasm::emit_qasm(circuit), a.output);
  return kOk;
}

topology::CouplingMap coupling_for(const std::string& text, std::size_t width) {
  bool sized = false;
  const auto spec = topology::TopologySpec::parse(text, &sized);
  if (spec.family == topology::Family::Device) return topology::load_device(spec.device_file).coupling;
  return sized ? topology::build(spec) : topology::smallest_fit(spec.family, width);
}

int cmd_validate(const std::string& qasm_path, const std::string& topo, const std::string& basis) {
  const auto circuit = qasm::load_qasm_file(qasm_path).circuit;
  const auto coupling = coupling_for(topo, circuit.num_qubits());
  const auto report = verify::validate_structure(circuit, coupling, transpiler::parse_basis(basis));
  if (report.ok()) {
    std::cout << "ok: " << qasm_path << " is valid on " << coupling.name() << " with basis " << basis << '\n';
    return kOk;
  }
  std::cout << report.violations.size() << " violations on " << coupling.name() << ":\n" << report.summary();
  if (!report.summary().empty() && report.summary().back() != '\n') std::cout << '\n';
  return kViolations;
}

int cmd_estimate(const std::string& qasm_path, const std::string& device_path, std::size_t shots, bool compile) {
  const auto device = topology::load_device(device_path.empty() ? kDefaultDevice : fs::path(device_path));
  auto circuit = qasm::load_qasm_file(qasm_path).circuit;
  if (compile) circuit = transpiler::transpile(circuit, device.coupling).circuit;
  const double duration = transpiler::schedule_duration(circuit, device.gate_durations);
  const double estimate = transpiler::execution_time_estimate(duration, shots, device.rep_delay);
  std::cout << "device            " << device.name << '\n'
            << "circuit_duration  " << duration << " s\n"
            << "rep_delay         " << device.rep_delay << " s\n"
            << "shots             " << shots << '\n'
            << "estimated_time    " << estimate << " s\n";
  return kOk;
}

struct ReportArgs {
  std::string baseline;
  std::vector<std::string> inputs;
  std::string group_by = "topology";
  std::string format = "md";
  std::string output;
};

int cmd_report(const ReportArgs& a) {
  const auto group_by = report::parse_group_by(a.group_by);
  if (!group_by) throw ConfigError("--group-by must be topology or suite");
  const auto format = report::parse_format(a.format);
  if (!format) throw ConfigError("--format must be md or csv");
  const auto baseline = harness::load_result(a.baseline);
  std::string text;
  for (const auto& path : a.inputs) {
    const auto candidate = harness::load_result(path);
    if (*format == report::Format::Markdown) {
      text += "## " + candidate.run_id + "\n\n";
      text += "```\n" + report::render_status_summary(harness::count_statuses(candidate.records)) + "```\n\n";
    }
    text += report::comparison_report(candidate, baseline, *group_by, *format);
    if (*format == report::Format::Markdown) text += '\n';
  }
  write_text(text, a.output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness and circuit tools for quantum compilers"};
  app.set_version_flag("--version", std::string(QBENCH_VERSION));
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the workout suite against a worker");
  run_cmd->add_option("--worker", run.worker, "Worker section name or 'builtin'")->capture_default_str();
  run_cmd->add_option("--config", run.config, "Configuration file");
  run_cmd->add_option("--output,-o", run.output, "Result file (default <run_id>.json)");
  run_cmd->add_option("--timeout", run.timeout, "Per-test timeout in seconds");
  run_cmd->add_option("--skip-file", run.skip_file, "Skipfile path");
  run_cmd->add_option("--workouts", run.workouts, "Workout registry");
  run_cmd->add_option("--filter", run.filters, "Keep tests whose id contains any of these strings");
  run_cmd->add_flag("--strict", run.strict, "Exit 1 when any test FAILED");

  std::string list_config, list_workouts;
  auto* list_cmd = app.add_subcommand("list", "List discovered tests");
  list_cmd->add_option("--config", list_config, "Configuration file");
  list_cmd->add_option("--workouts", list_workouts, "Workout registry");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated circuit as OpenQASM 2.0");
  gen_cmd->add_option("--family", gen.family, "Generator name")->required();
  gen_cmd->add_option("--qubits,-n", gen.qubits, "Width parameter n")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--depth", gen.depth, "Depth, layers, steps or reps");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  std::string val_qasm, val_topology = "all_to_all", val_basis = transpiler::format_basis(transpiler::default_basis());
  auto* val_cmd = app.add_subcommand("validate", "Check a circuit against a topology and basis");
  val_cmd->add_option("--qasm", val_qasm, "Circuit file")->required();
  val_cmd->add_option("--topology", val_topology, "family, family:size or device:<file>")->capture_default_str();
  val_cmd->add_option("--basis", val_basis, "Comma-separated basis gates")->capture_default_str();

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "Normalize result files against a baseline");
  rep_cmd->add_option("--baseline", rep.baseline, "Baseline result file")->required();
  rep_cmd->add_option("--inputs", rep.inputs, "Candidate result files")->required();
  rep_cmd->add_option("--group-by", rep.group_by, "topology or suite")->capture_default_str();
  rep_cmd->add_option("--format", rep.format, "md or csv")->capture_default_str();
  rep_cmd->add_option("-o,--output", rep.output, "Output file (default stdout)");

  std::string est_qasm, est_device;
  std::size_t est_shots = transpiler::kDefaultShots;
  bool est_transpile = false;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate device execution time");
  est_cmd->add_option("--qasm", est_qasm, "Circuit file")->required();
  est_cmd->add_option("--device", est_device, "Device file (default bundled device)");
  est_cmd->add_option("--shots", est_shots, "Number of shots")->capture_default_str()->check(CLI::PositiveNumber);
  est_cmd->add_flag("--transpile", est_transpile, "Compile onto the device before scheduling");

  auto* worker_cmd = app.add_subcommand("worker", "");
  worker_cmd->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*list_cmd) return cmd_list(list_config, list_workouts);
    if (*gen_cmd) return cmd_generate(gen);
    if (*val_cmd) return cmd_validate(val_qasm, val_topology, val_basis);
    if (*rep_cmd) return cmd_report(rep);
    if (*est_cmd) return cmd_estimate(est_qasm, est_device, est_shots, est_transpile);
    if (*worker_cmd) return harness::serve_builtin_worker(std::cin, std::cout);
  } catch (const qbench::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
