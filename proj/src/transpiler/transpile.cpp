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

#include <algorithm>
#include <chrono>

#include "qbench/error.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::transpiler {

using circuit::GateId;

TranspileResult transpile(const Circuit& circuit, const topology::CouplingMap& coupling,
                          const TranspileOptions& options) {
  if (options.opt_level < 0 || options.opt_level > 1) {
    throw TranspileError("opt_level must be 0 or 1, got " + std::to_string(options.opt_level));
  }
  const auto start = std::chrono::steady_clock::now();
  auto result = route(decompose_to_2q(circuit), coupling, options.layout);
  result.circuit = translate_basis(result.circuit, options.basis);
  if (options.opt_level >= 1) result.circuit = merge_1q_runs(result.circuit, options.basis);
  result.opt_level = options.opt_level;
  result.circuit.set_metadata("opt_level", std::to_string(options.opt_level));
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double schedule_duration(const Circuit& circuit, const std::map<std::string, double>& durations) {
  const std::size_t nq = circuit.num_qubits();
  std::vector<double> ready(nq + circuit.num_clbits(), 0.0);
  std::vector<std::size_t> wires;
  for (const auto& ins : circuit.instructions()) {
    wires.clear();
    for (auto q : ins.qubits) wires.push_back(q);
    for (auto c : ins.clbits) wires.push_back(nq + c);
    if (ins.condition) {
      const auto offset = circuit.creg_offset(ins.condition->creg);
      const auto width = circuit.find_creg(ins.condition->creg)->width;
      for (std::size_t b = 0; b < width; ++b) wires.push_back(nq + offset + b);
    }
    double start = 0.0;
    for (auto w : wires) start = std::max(start, ready[w]);
    double length = 0.0;
    if (ins.gate.id != GateId::Barrier) {
      const auto it = durations.find(ins.gate.name);
      if (it == durations.end()) throw TranspileError("no duration for gate '" + ins.gate.name + "'");
      length = it->second;
    }
    for (auto w : wires) ready[w] = start + length;
  }
  double total = 0.0;
  for (auto t : ready) total = std::max(total, t);
  return total;
}

double execution_time_estimate(double duration, std::size_t shots, double rep_delay) {
  return static_cast<double>(shots) * (duration + rep_delay);
}

}  // namespace qbench::transpiler
