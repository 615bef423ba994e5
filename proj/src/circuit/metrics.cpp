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

#include "qbench/circuit/metrics.hpp"

#include <algorithm>
#include <vector>

#include "qbench/error.hpp"

namespace qbench::circuit {
namespace {

void require_lowered(const Circuit& circuit) {
  for (const auto& ins : circuit.instructions()) {
    if (ins.gate.id != GateId::Barrier && ins.arity() >= 3) {
      throw MetricUndefined("2Q metrics undefined: '" + ins.gate.name + "' acts on " +
                            std::to_string(ins.arity()) + " qubits");
    }
  }
}

// Wires are the qubits followed by the flattened classical bits.
class WireLevels {
 public:
  explicit WireLevels(const Circuit& circuit)
      : circuit_(circuit), levels_(circuit.num_qubits() + circuit.num_clbits(), 0) {}

  std::size_t place(const Instruction& ins, std::size_t cost) {
    std::size_t level = 0;
    for_each_wire(ins, [&](std::size_t w) { level = std::max(level, levels_[w]); });
    level += cost;
    for_each_wire(ins, [&](std::size_t w) { levels_[w] = level; });
    return level;
  }

  void align_all() {
    const std::size_t top = max();
    std::fill(levels_.begin(), levels_.end(), top);
  }

  std::size_t max() const { return levels_.empty() ? 0 : *std::max_element(levels_.begin(), levels_.end()); }

 private:
  template <typename F>
  void for_each_wire(const Instruction& ins, F&& f) const {
    const std::size_t nq = circuit_.num_qubits();
    for (Qubit q : ins.qubits) f(q);
    for (Clbit c : ins.clbits) f(nq + c);
    if (ins.condition) {
      const std::size_t offset = circuit_.creg_offset(ins.condition->creg);
      const std::size_t width = circuit_.find_creg(ins.condition->creg)->width;
      for (std::size_t b = 0; b < width; ++b) f(nq + offset + b);
    }
  }

  const Circuit& circuit_;
  std::vector<std::size_t> levels_;
};

}  // namespace

std::map<std::string, std::size_t> op_counts(const Circuit& circuit) {
  std::map<std::string, std::size_t> counts;
  for (const auto& ins : circuit.instructions()) ++counts[ins.gate.name];
  return counts;
}

std::size_t two_qubit_gate_count(const Circuit& circuit) {
  require_lowered(circuit);
  return static_cast<std::size_t>(std::count_if(circuit.instructions().begin(), circuit.instructions().end(),
                                                [](const Instruction& ins) { return ins.is_two_qubit_gate(); }));
}

std::size_t two_qubit_depth(const Circuit& circuit) {
  require_lowered(circuit);
  WireLevels levels(circuit);
  for (const auto& ins : circuit.instructions()) {
    if (ins.gate.id == GateId::Barrier) continue;
    levels.place(ins, ins.is_two_qubit_gate() ? 1 : 0);
  }
  return levels.max();
}

std::size_t full_depth(const Circuit& circuit) {
  WireLevels levels(circuit);
  for (const auto& ins : circuit.instructions()) {
    if (ins.gate.id == GateId::Barrier) {
      levels.align_all();
      continue;
    }
    levels.place(ins, 1);
  }
  return levels.max();
}

}  // namespace qbench::circuit
