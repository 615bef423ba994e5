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

#include "qbench/error.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::transpiler {

using circuit::GateId;
using circuit::Instruction;
using circuit::make_instruction;

namespace {

void emit(Circuit& out, const Instruction& source, GateId id, std::vector<circuit::Qubit> qubits) {
  Instruction ins = make_instruction(id, std::move(qubits));
  ins.condition = source.condition;
  out.append(std::move(ins));
}

}  // namespace

Circuit decompose_to_2q(const Circuit& circuit) {
  Circuit out = circuit.empty_like();
  for (const auto& ins : circuit.instructions()) {
    const auto& q = ins.qubits;
    switch (ins.gate.id) {
      case GateId::CCX: {
        const auto a = q[0], b = q[1], t = q[2];
        emit(out, ins, GateId::H, {t});
        emit(out, ins, GateId::CX, {b, t});
        emit(out, ins, GateId::Tdg, {t});
        emit(out, ins, GateId::CX, {a, t});
        emit(out, ins, GateId::T, {t});
        emit(out, ins, GateId::CX, {b, t});
        emit(out, ins, GateId::Tdg, {t});
        emit(out, ins, GateId::CX, {a, t});
        emit(out, ins, GateId::T, {b});
        emit(out, ins, GateId::T, {t});
        emit(out, ins, GateId::H, {t});
        emit(out, ins, GateId::CX, {a, b});
        emit(out, ins, GateId::T, {a});
        emit(out, ins, GateId::Tdg, {b});
        emit(out, ins, GateId::CX, {a, b});
        break;
      }
      case GateId::Swap:
        emit(out, ins, GateId::CX, {q[0], q[1]});
        emit(out, ins, GateId::CX, {q[1], q[0]});
        emit(out, ins, GateId::CX, {q[0], q[1]});
        break;
      default:
        if (ins.gate.id != GateId::Barrier && ins.arity() >= 3) {
          throw TranspileError("no decomposition for " + std::to_string(ins.arity()) + "-qubit gate '" +
                               ins.gate.name + "'");
        }
        out.append(ins);
    }
  }
  return out;
}

}  // namespace qbench::transpiler
