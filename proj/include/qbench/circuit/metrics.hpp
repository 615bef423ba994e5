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

#include <cstddef>
#include <map>
#include <string>

#include "qbench/circuit/circuit.hpp"

namespace qbench::circuit {

/// Gate name -> number of occurrences. Gates that never occur are absent.
std::map<std::string, std::size_t> op_counts(const Circuit& circuit);

/// Number of two-qubit gates. Barriers and measurements never count.
/// Throws MetricUndefined if any gate acts on three or more qubits.
std::size_t two_qubit_gate_count(const Circuit& circuit);

/// Number of two-qubit layers in an as-soon-as-possible schedule that only
/// counts two-qubit gates. Single-qubit gates and measurements cost nothing
/// but still carry dependencies; a conditioned gate depends on every bit of
/// its register. Barriers are ignored. Throws MetricUndefined as above.
std::size_t two_qubit_depth(const Circuit& circuit);

/// Conventional depth over all non-barrier instructions. A barrier aligns
/// every wire of the circuit without adding a layer.
std::size_t full_depth(const Circuit& circuit);

}  // namespace qbench::circuit
