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

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "qbench/error.hpp"
#include "qbench/qasm/qasm.hpp"

namespace qbench::qasm {
namespace {

using circuit::Circuit;
using circuit::GateId;
using circuit::Instruction;

void append_angle(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  out.append(buf, ptr);
}

}  // namespace

std::string emit_qasm(const Circuit& circuit) {
  std::string qreg = "q";
  while (circuit.find_creg(qreg)) qreg += "_";

  // Flat classical bit -> (register, index).
  std::vector<std::pair<const std::string*, std::size_t>> clbit_names;
  for (const auto& r : circuit.cregs()) {
    for (std::size_t i = 0; i < r.width; ++i) clbit_names.emplace_back(&r.name, i);
  }

  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

  std::map<std::string, const Instruction*> opaque;
  for (const auto& ins : circuit.instructions()) {
    if (ins.gate.id == GateId::Opaque) opaque.emplace(ins.gate.name, &ins);
  }
  for (const auto& [name, ins] : opaque) {
    out += "opaque " + name;
    if (ins->gate.param_count > 0) {
      out += "(";
      for (std::uint32_t i = 0; i < ins->gate.param_count; ++i) out += (i ? ",p" : "p") + std::to_string(i);
      out += ")";
    }
    for (std::uint32_t i = 0; i < ins->gate.arity; ++i) out += (i ? ",a" : " a") + std::to_string(i);
    out += ";\n";
  }

  out += "qreg " + qreg + "[" + std::to_string(circuit.num_qubits()) + "];\n";
  for (const auto& r : circuit.cregs()) out += "creg " + r.name + "[" + std::to_string(r.width) + "];\n";

  for (const auto& ins : circuit.instructions()) {
    if (ins.condition) out += "if(" + ins.condition->creg + "==" + ins.condition->value.str() + ") ";
    out += ins.gate.name;
    if (!ins.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < ins.params.size(); ++i) {
        if (i) out += ",";
        append_angle(out, ins.params[i].value());
      }
      out += ")";
    }
    for (std::size_t i = 0; i < ins.qubits.size(); ++i) {
      out += i ? "," : " ";
      out += qreg + "[" + std::to_string(ins.qubits[i]) + "]";
    }
    if (ins.gate.id == GateId::Measure) {
      const auto& [name, index] = clbit_names.at(ins.clbits.at(0));
      out += " -> " + *name + "[" + std::to_string(index) + "]";
    }
    out += ";\n";
  }
  return out;
}

void write_qasm_file(const Circuit& circuit, const std::filesystem::path& path) {
  const std::string text = emit_qasm(circuit);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write QASM file " + path.string());
  out << text;
  if (!out) throw Error("failed writing QASM file " + path.string());
}

}  // namespace qbench::qasm
