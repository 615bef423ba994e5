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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbench/circuit/gate.hpp"
#include "qbench/circuit/parameter.hpp"

namespace qbench::circuit {

using Qubit = std::uint32_t;
using Clbit = std::uint32_t;
using BigUint = boost::multiprecision::cpp_int;

struct ClassicalRegister {
  std::string name;
  std::size_t width = 0;

  friend bool operator==(const ClassicalRegister&, const ClassicalRegister&) = default;
};

/// `if (creg == value)`. The value must fit in the register width.
struct ClassicalCondition {
  std::string creg;
  BigUint value;

  friend bool operator==(const ClassicalCondition&, const ClassicalCondition&) = default;
};

struct Instruction {
  GateKind gate;
  std::vector<Qubit> qubits;
  std::vector<ParameterExpr> params;
  /// Flat classical bit indices written by a measurement.
  std::vector<Clbit> clbits;
  std::optional<ClassicalCondition> condition;

  std::size_t arity() const noexcept { return qubits.size(); }
  bool is_two_qubit_gate() const noexcept { return gate.id != GateId::Barrier && qubits.size() == 2; }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Ordered instruction list over qubits 0..num_qubits-1 and named classical
/// registers whose bits are flattened in declaration order.
///
/// Equality compares width, registers and instructions. Metadata is an
/// annotation and does not take part.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  void add_qubits(std::size_t count) { num_qubits_ += count; }

  const std::vector<ClassicalRegister>& cregs() const noexcept { return cregs_; }
  std::size_t num_clbits() const noexcept;
  void add_creg(std::string name, std::size_t width);
  const ClassicalRegister* find_creg(std::string_view name) const;
  /// Flat index of bit 0 of the register.
  std::size_t creg_offset(std::string_view name) const;

  const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
  std::size_t size() const noexcept { return instructions_.size(); }
  bool empty() const noexcept { return instructions_.empty(); }

  /// Validates the instruction against the circuit and appends it.
  void append(Instruction instruction);

  Circuit& add(GateId id, std::initializer_list<Qubit> qubits, std::vector<ParameterExpr> params = {});
  Circuit& add(GateId id, std::vector<Qubit> qubits, std::vector<ParameterExpr> params = {});
  Circuit& measure(Qubit qubit, Clbit clbit);
  Circuit& barrier(std::vector<Qubit> qubits);

  const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }
  void set_metadata(const std::string& key, std::string value) { metadata_[key] = std::move(value); }
  std::string metadata_or(const std::string& key, std::string fallback) const;

  /// Copy with the same width, registers and metadata but no instructions.
  Circuit empty_like() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits_ == b.num_qubits_ && a.cregs_ == b.cregs_ && a.instructions_ == b.instructions_;
  }

 private:
  void validate(const Instruction& instruction) const;

  std::size_t num_qubits_;
  std::vector<ClassicalRegister> cregs_;
  std::vector<Instruction> instructions_;
  std::map<std::string, std::string> metadata_;
};

/// True when value < 2^width.
bool fits_in_bits(const BigUint& value, std::size_t width);

/// Builds an instruction for a standard gate.
Instruction make_instruction(GateId id, std::vector<Qubit> qubits, std::vector<ParameterExpr> params = {});

}  // namespace qbench::circuit
