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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbench::circuit {

/// Identifiers for every gate the library knows how to reason about.
/// Opaque covers user-declared gates with no known matrix.
enum class GateId : std::uint8_t {
  Id, X, Y, Z, H, S, Sdg, T, Tdg, SX, SXdg, RX, RY, RZ, U1, U2, U3,
  CX, CY, CZ, CH, CRZ, CU1, CU3, Swap,
  CCX,
  Measure, Reset, Barrier,
  Opaque,
};

struct GateKind {
  GateId id = GateId::Opaque;
  std::string name;
  std::uint32_t arity = 1;
  std::uint32_t param_count = 0;

  friend bool operator==(const GateKind&, const GateKind&) = default;
};

/// The built-in table: qelib1 gates plus sx/sxdg and the measure/reset/barrier directives.
const std::vector<GateKind>& standard_gates();

/// Looks up a built-in gate by its lower-case name.
std::optional<GateKind> find_standard_gate(std::string_view name);

const GateKind& standard_gate(GateId id);

/// Barriers are the only variable-arity instruction; the kind records the span used.
GateKind barrier_kind(std::uint32_t num_qubits);

GateKind opaque_kind(std::string name, std::uint32_t arity, std::uint32_t param_count);

/// True for gates that act unitarily on their qubits (everything except
/// measure, reset and barrier).
bool is_unitary(GateId id);

/// True when the gate has a known matrix.
bool has_matrix(GateId id);

/// True for directives that the 2Q metrics never count.
inline bool is_directive(GateId id) { return id == GateId::Barrier || id == GateId::Measure || id == GateId::Reset; }

}  // namespace qbench::circuit
