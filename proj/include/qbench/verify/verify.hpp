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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qbench/circuit/circuit.hpp"
#include "qbench/topology/coupling_map.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::verify {

using circuit::Circuit;

enum class ViolationKind { OffEdge2Q, NonBasisGate, ArityViolation, WidthExceeded };

/// "off_edge_2q", "non_basis_gate", "arity_violation", "width_exceeded".
std::string violation_kind_name(ViolationKind kind);

struct Violation {
  static constexpr std::size_t kWholeCircuit = std::numeric_limits<std::size_t>::max();

  ViolationKind kind;
  /// Index into the instruction list, or kWholeCircuit.
  std::size_t instruction = kWholeCircuit;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
  /// One line per violation.
  std::string summary() const;
};

/// Checks a compiled circuit against a target: every 2Q gate on an edge,
/// every gate in the basis (measure, reset and barrier always allowed), no
/// gates on three or more qubits, and no more qubits than nodes. Never throws.
ValidationReport validate_structure(const Circuit& circuit, const topology::CouplingMap& coupling,
                                    const transpiler::Basis& basis);

using Amplitudes = std::vector<std::complex<double>>;

inline constexpr std::size_t kDefaultWidthCap = 12;

enum class Kernel { Serial, Parallel };

/// Little-endian amplitudes of the circuit applied to |0...0>. Requires bound
/// parameters, no classical conditions and no measure/reset. Throws
/// SimulationError otherwise or when the width is over `width_cap`.
Amplitudes statevector(const Circuit& circuit, std::size_t width_cap = kDefaultWidthCap,
                       Kernel kernel = Kernel::Parallel);

/// Applies the circuit to `state` in place (same preconditions).
void evolve(Amplitudes& state, const Circuit& circuit, Kernel kernel = Kernel::Parallel);

struct EquivalenceOptions {
  double tolerance = 1e-9;
  std::size_t width_cap = kDefaultWidthCap;
  /// Widths up to this use every basis state as input.
  std::size_t exhaustive_width = 6;
  std::size_t random_states = 32;
  std::uint64_t seed = 0x5eed;
};

struct EquivalenceResult {
  bool equivalent = false;
  double max_deviation = 0.0;
  std::string detail;
};

/// Checks b = P a up to one global phase, where P moves the state of qubit p
/// to qubit permutation[p] (identity when empty). Terminal measurements are
/// removed first and must agree under the same relabelling. Throws
/// SimulationError for differing widths or a width over the cap.
EquivalenceResult compare_circuits(const Circuit& a, const Circuit& b, const std::vector<std::size_t>& permutation,
                                   const EquivalenceOptions& options = {});

bool equivalent_up_to(const Circuit& a, const Circuit& b, const std::vector<std::size_t>& permutation,
                      double tolerance = 1e-9);

/// A logical circuit and its routed form restricted to the nodes either one
/// touches, renumbered in increasing node order.
struct CompactPair {
  Circuit logical;
  Circuit routed;
  std::vector<std::size_t> permutation;
  std::vector<std::size_t> nodes;
};

/// Prepares a routing result for compare_circuits: places the logical circuit
/// with the initial layout and drops idle nodes so the check fits the cap.
CompactPair compact_routed(const Circuit& logical, const transpiler::TranspileResult& routed);

}  // namespace qbench::verify
