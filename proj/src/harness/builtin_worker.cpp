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

#include "qbench/harness/builtin_worker.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include "qbench/circuit/metrics.hpp"
#include "qbench/error.hpp"
#include "qbench/harness/workout.hpp"
#include "qbench/qasm/qasm.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::harness {

namespace fs = std::filesystem;

namespace {

using Stopwatch = std::chrono::steady_clock;

double seconds_since(Stopwatch::time_point start) {
  return std::chrono::duration<double>(Stopwatch::now() - start).count();
}

wire::Result write_artifact(const wire::RunTest& request, const circuit::Circuit& circuit, double wall_time) {
  const fs::path dir = request.scratch_dir.empty() ? fs::current_path() : fs::path(request.scratch_dir);
  fs::create_directories(dir);
  const fs::path path = dir / "artifact.qasm";
  qasm::write_qasm_file(circuit, path);
  wire::Result r;
  r.test_id = request.test_id;
  r.ok = true;
  r.wall_time_s = wall_time;
  r.artifact_path = path.string();
  r.worker_metrics = {{"two_q_gates", circuit::two_qubit_gate_count(circuit)}};
  return r;
}

}  // namespace

wire::WireMessage handle_request(const wire::RunTest& request) {
  try {
    const auto kind = parse_kind(request.kind);
    if (!kind) return wire::to_message(wire::Error{request.test_id, "unknown test kind '" + request.kind + "'"});

    if (*kind == Kind::Construct || *kind == Kind::Manipulate) {
      const auto input = InputDescriptor::from_json(request.input);
      if (*kind == Kind::Construct && input.source != InputDescriptor::Source::Generator) {
        return wire::to_message(wire::Error{request.test_id, "construct needs a generator input"});
      }
      const auto start = Stopwatch::now();
      auto built = materialize(input);
      const double wall = seconds_since(start);
      return wire::to_message(write_artifact(request, built.circuit, wall));
    }

    if (!request.target) return wire::to_message(wire::Error{request.test_id, "transpile request without target"});
    if (!request.input.contains("qasm_path")) {
      return wire::to_message(wire::Error{request.test_id, "transpile request needs qasm_path"});
    }
    const auto& t = *request.target;
    const topology::CouplingMap coupling(t.num_nodes, t.edges, t.topology);
    transpiler::TranspileOptions options;
    options.basis = transpiler::Basis(t.basis.begin(), t.basis.end());
    options.opt_level = t.opt_level;

    const auto loaded = qasm::load_qasm_file(request.input.at("qasm_path").get<std::string>());
    const auto start = Stopwatch::now();
    const auto compiled = transpiler::transpile(loaded.circuit, coupling, options);
    const double wall = seconds_since(start);
    auto result = write_artifact(request, compiled.circuit, wall);
    result.qasm_load_time_s = loaded.parse_seconds;
    result.worker_metrics["swaps_inserted"] = compiled.swaps_inserted;
    return wire::to_message(result);
  } catch (const std::exception& e) {
    return wire::to_message(wire::Error{request.test_id, e.what()});
  }
}

int serve_builtin_worker(std::istream& in, std::ostream& out) {
  wire::Hello hello{"builtin", QBENCH_VERSION, {"construct", "manipulate", "transpile_abstract", "transpile_device"}};
  out << wire::wire_encode(wire::to_message(hello)) << std::endl;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    wire::WireMessage reply;
    try {
      const auto message = wire::wire_decode(line);
      reply = handle_request(wire::as_run_test(message));
    } catch (const std::exception& e) {
      reply = wire::to_message(wire::Error{"", std::string("malformed request: ") + e.what()});
    }
    out << wire::wire_encode(reply) << std::endl;
  }
  return 0;
}

}  // namespace qbench::harness
