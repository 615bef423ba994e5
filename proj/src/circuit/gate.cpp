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

#include "qbench/circuit/gate.hpp"

#include <algorithm>

namespace qbench::circuit {

const std::vector<GateKind>& standard_gates() {
  static const std::vector<GateKind> table = {
      {GateId::Id, "id", 1, 0},     {GateId::X, "x", 1, 0},       {GateId::Y, "y", 1, 0},
      {GateId::Z, "z", 1, 0},       {GateId::H, "h", 1, 0},       {GateId::S, "s", 1, 0},
      {GateId::Sdg, "sdg", 1, 0},   {GateId::T, "t", 1, 0},       {GateId::Tdg, "tdg", 1, 0},
      {GateId::SX, "sx", 1, 0},     {GateId::SXdg, "sxdg", 1, 0}, {GateId::RX, "rx", 1, 1},
      {GateId::RY, "ry", 1, 1},     {GateId::RZ, "rz", 1, 1},     {GateId::U1, "u1", 1, 1},
      {GateId::U2, "u2", 1, 2},     {GateId::U3, "u3", 1, 3},     {GateId::CX, "cx", 2, 0},
      {GateId::CY, "cy", 2, 0},     {GateId::CZ, "cz", 2, 0},     {GateId::CH, "ch", 2, 0},
      {GateId::CRZ, "crz", 2, 1},   {GateId::CU1, "cu1", 2, 1},   {GateId::CU3, "cu3", 2, 3},
      {GateId::Swap, "swap", 2, 0}, {GateId::CCX, "ccx", 3, 0},   {GateId::Measure, "measure", 1, 0},
      {GateId::Reset, "reset", 1, 0},
  };
  return table;
}

std::optional<GateKind> find_standard_gate(std::string_view name) {
  const auto& table = standard_gates();
  auto it = std::find_if(table.begin(), table.end(), [&](const GateKind& g) { return g.name == name; });
  if (it == table.end()) return std::nullopt;
  return *it;
}

const GateKind& standard_gate(GateId id) {
  const auto& table = standard_gates();
  auto it = std::find_if(table.begin(), table.end(), [&](const GateKind& g) { return g.id == id; });
  if (it == table.end()) {
    static const GateKind barrier{GateId::Barrier, "barrier", 1, 0};
    static const GateKind opaque{GateId::Opaque, "opaque", 1, 0};
    return id == GateId::Barrier ? barrier : opaque;
  }
  return *it;
}

GateKind barrier_kind(std::uint32_t num_qubits) { return {GateId::Barrier, "barrier", num_qubits, 0}; }

GateKind opaque_kind(std::string name, std::uint32_t arity, std::uint32_t param_count) {
  return {GateId::Opaque, std::move(name), arity, param_count};
}

bool is_unitary(GateId id) { return !is_directive(id); }

bool has_matrix(GateId id) { return is_unitary(id) && id != GateId::Opaque; }

}  // namespace qbench::circuit
