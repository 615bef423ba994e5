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

#include "qbench/verify/verify.hpp"

namespace qbench::verify {

using circuit::GateId;

std::string violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::OffEdge2Q: return "off_edge_2q";
    case ViolationKind::NonBasisGate: return "non_basis_gate";
    case ViolationKind::ArityViolation: return "arity_violation";
    case ViolationKind::WidthExceeded: return "width_exceeded";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  std::size_t n = 0;
  for (const auto& v : violations) n += v.kind == kind;
  return n;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    out += violation_kind_name(v.kind);
    if (v.instruction != Violation::kWholeCircuit) out += " at instruction " + std::to_string(v.instruction);
    out += ": " + v.detail + "\n";
  }
  return out;
}

ValidationReport validate_structure(const Circuit& circuit, const topology::CouplingMap& coupling,
                                    const transpiler::Basis& basis) {
  ValidationReport report;
  if (circuit.num_qubits() > coupling.num_nodes()) {
    report.violations.push_back({ViolationKind::WidthExceeded, Violation::kWholeCircuit,
                                 std::to_string(circuit.num_qubits()) + " qubits on " +
                                     std::to_string(coupling.num_nodes()) + " nodes"});
  }
  const auto& ins_list = circuit.instructions();
  for (std::size_t i = 0; i < ins_list.size(); ++i) {
    const auto& ins = ins_list[i];
    if (ins.gate.id == GateId::Barrier) continue;
    if (ins.arity() >= 3) {
      report.violations.push_back({ViolationKind::ArityViolation, i,
                                   ins.gate.name + " acts on " + std::to_string(ins.arity()) + " qubits"});
    }
    if (!circuit::is_directive(ins.gate.id) && basis.find(ins.gate.name) == basis.end()) {
      report.violations.push_back({ViolationKind::NonBasisGate, i, ins.gate.name + " is not in the basis"});
    }
    if (ins.arity() == 2 && !coupling.has_edge(ins.qubits[0], ins.qubits[1])) {
      report.violations.push_back({ViolationKind::OffEdge2Q, i,
                                   ins.gate.name + " on (" + std::to_string(ins.qubits[0]) + "," +
                                       std::to_string(ins.qubits[1]) + ") which is not an edge"});
    }
  }
  return report;
}

}  // namespace qbench::verify
