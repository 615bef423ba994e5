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

#include "qbench/circuit/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "qbench/error.hpp"

namespace qbench::circuit {

std::size_t Circuit::num_clbits() const noexcept {
  return std::accumulate(cregs_.begin(), cregs_.end(), std::size_t{0},
                         [](std::size_t acc, const ClassicalRegister& r) { return acc + r.width; });
}

void Circuit::add_creg(std::string name, std::size_t width) {
  if (width == 0) throw InvalidCircuit("classical register '" + name + "' has zero width");
  if (find_creg(name)) throw InvalidCircuit("duplicate classical register '" + name + "'");
  cregs_.push_back({std::move(name), width});
}

const ClassicalRegister* Circuit::find_creg(std::string_view name) const {
  auto it = std::find_if(cregs_.begin(), cregs_.end(), [&](const ClassicalRegister& r) { return r.name == name; });
  return it == cregs_.end() ? nullptr : &*it;
}

std::size_t Circuit::creg_offset(std::string_view name) const {
  std::size_t offset = 0;
  for (const auto& r : cregs_) {
    if (r.name == name) return offset;
    offset += r.width;
  }
  throw InvalidCircuit("unknown classical register '" + std::string(name) + "'");
}

void Circuit::validate(const Instruction& ins) const {
  const auto& g = ins.gate;
  if (ins.qubits.size() != g.arity) {
    throw InvalidCircuit(g.name + " expects " + std::to_string(g.arity) + " qubits, got " +
                         std::to_string(ins.qubits.size()));
  }
  if (ins.params.size() != g.param_count) {
    throw InvalidCircuit(g.name + " expects " + std::to_string(g.param_count) + " parameters, got " +
                         std::to_string(ins.params.size()));
  }
  for (std::size_t i = 0; i < ins.qubits.size(); ++i) {
    if (ins.qubits[i] >= num_qubits_) {
      throw InvalidCircuit(g.name + ": qubit " + std::to_string(ins.qubits[i]) + " out of range for width " +
                           std::to_string(num_qubits_));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ins.qubits[i] == ins.qubits[j]) throw InvalidCircuit(g.name + ": repeated qubit argument");
    }
  }
  const std::size_t clbits = num_clbits();
  if (g.id == GateId::Measure && ins.clbits.size() != 1) throw InvalidCircuit("measure needs one classical bit");
  if (g.id != GateId::Measure && !ins.clbits.empty()) throw InvalidCircuit(g.name + " cannot write classical bits");
  for (Clbit c : ins.clbits) {
    if (c >= clbits) throw InvalidCircuit("classical bit " + std::to_string(c) + " out of range");
  }
  if (ins.condition) {
    const auto* reg = find_creg(ins.condition->creg);
    if (!reg) throw InvalidCircuit("condition on unknown register '" + ins.condition->creg + "'");
    if (!fits_in_bits(ins.condition->value, reg->width)) {
      throw InvalidCircuit("condition value does not fit in register '" + reg->name + "'");
    }
  }
}

bool fits_in_bits(const BigUint& value, std::size_t width) {
  if (value < 0) return false;
  if (value == 0) return true;
  return boost::multiprecision::msb(value) < width;
}

void Circuit::append(Instruction instruction) {
  validate(instruction);
  instructions_.push_back(std::move(instruction));
}

Circuit& Circuit::add(GateId id, std::initializer_list<Qubit> qubits, std::vector<ParameterExpr> params) {
  return add(id, std::vector<Qubit>(qubits), std::move(params));
}

Circuit& Circuit::add(GateId id, std::vector<Qubit> qubits, std::vector<ParameterExpr> params) {
  append(make_instruction(id, std::move(qubits), std::move(params)));
  return *this;
}

Circuit& Circuit::measure(Qubit qubit, Clbit clbit) {
  Instruction ins = make_instruction(GateId::Measure, {qubit});
  ins.clbits = {clbit};
  append(std::move(ins));
  return *this;
}

Circuit& Circuit::barrier(std::vector<Qubit> qubits) {
  Instruction ins;
  ins.gate = barrier_kind(static_cast<std::uint32_t>(qubits.size()));
  ins.qubits = std::move(qubits);
  append(std::move(ins));
  return *this;
}

std::string Circuit::metadata_or(const std::string& key, std::string fallback) const {
  auto it = metadata_.find(key);
  return it == metadata_.end() ? std::move(fallback) : it->second;
}

Circuit Circuit::empty_like() const {
  Circuit c(num_qubits_);
  c.cregs_ = cregs_;
  c.metadata_ = metadata_;
  return c;
}

Instruction make_instruction(GateId id, std::vector<Qubit> qubits, std::vector<ParameterExpr> params) {
  Instruction ins;
  ins.gate = id == GateId::Barrier ? barrier_kind(static_cast<std::uint32_t>(qubits.size())) : standard_gate(id);
  ins.qubits = std::move(qubits);
  ins.params = std::move(params);
  return ins;
}

}  // namespace qbench::circuit
