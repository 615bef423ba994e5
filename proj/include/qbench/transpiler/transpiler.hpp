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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/gate_matrix.hpp"
#include "qbench/topology/coupling_map.hpp"

namespace qbench::transpiler {

using circuit::Circuit;

/// Target gate names. Measure, barrier and reset are always accepted.
using Basis = std::set<std::string, std::less<>>;

/// {sx, x, rz, cz}.
const Basis& default_basis();
Basis parse_basis(std::string_view comma_separated);
std::string format_basis(const Basis& basis);

/// Lowers ccx to the 6-cx template and swap to 3 cx. Other gates pass through.
/// Throws TranspileError for gates of arity >= 3 that have no decomposition.
Circuit decompose_to_2q(const Circuit& circuit);

enum class LayoutStrategy { Identity, DegreeDense };
std::string layout_strategy_name(LayoutStrategy s);
std::optional<LayoutStrategy> parse_layout_strategy(std::string_view name);

/// Position of logical qubit i is layout[i].
using Layout = std::vector<std::size_t>;

/// Initial placement of the circuit's qubits on the coupling map.
/// DegreeDense takes a breadth-first region around the highest-degree node
/// and gives the logical qubits with the most 2Q gates the best-connected
/// nodes of that region.
Layout choose_layout(const Circuit& circuit, const topology::CouplingMap& coupling, LayoutStrategy strategy);

struct TranspileResult {
  /// Physical circuit over coupling.num_nodes() qubits.
  Circuit circuit;
  Layout initial_layout;
  Layout final_layout;
  /// permutation[p] is the node that ends up holding the state which started
  /// on node p. Covers every node, idle ones included.
  std::vector<std::size_t> permutation;
  std::size_t swaps_inserted = 0;
  double wall_time = 0.0;
  int opt_level = 0;
};

/// Places and routes a circuit of 1Q/2Q gates. Each 2Q gate whose operands
/// are not adjacent moves its first operand along a shortest path with swap
/// gates. Throws WidthExceeded when the circuit is wider than the map.
TranspileResult route(const Circuit& circuit, const topology::CouplingMap& coupling,
                      LayoutStrategy strategy = LayoutStrategy::Identity);

/// Rewrites the circuit into the basis. Gates already in the basis are kept.
/// 2Q gates are expanded through cx (then h-conjugated cz when cx is not in
/// the basis); 1Q gates are resynthesized from their matrices. Throws
/// TranspileError when the basis has no usable entangler or 1Q set.
Circuit translate_basis(const Circuit& circuit, const Basis& basis);

/// Collapses maximal runs of unconditioned 1Q gates on each wire into one
/// synthesized sequence in the basis. A run is left alone when synthesis
/// would not shorten it.
Circuit merge_1q_runs(const Circuit& circuit, const Basis& basis);

/// The 1Q gate sequence for a 2x2 unitary (up to global phase) in the basis:
/// rz/sx[/x] forms when rz and sx are available, otherwise a single u3.
/// Empty for the identity.
std::vector<circuit::Instruction> synthesize_1q(const circuit::Matrix2& u, circuit::Qubit qubit, const Basis& basis);

struct TranspileOptions {
  Basis basis = default_basis();
  int opt_level = 1;
  LayoutStrategy layout = LayoutStrategy::Identity;
};

/// decompose_to_2q, route, translate_basis and, for opt_level >= 1,
/// merge_1q_runs.
TranspileResult transpile(const Circuit& circuit, const topology::CouplingMap& coupling,
                          const TranspileOptions& options = {});

/// The circuit relabelled onto `width` physical qubits: logical i -> layout[i].
Circuit apply_layout(const Circuit& circuit, const Layout& layout, std::size_t width);

inline constexpr std::size_t kDefaultShots = 4096;

/// Critical-path length of the circuit when each instruction takes its
/// durations[name] seconds. Barriers take no time but align their wires.
/// Throws TranspileError for a gate without an entry.
double schedule_duration(const Circuit& circuit, const std::map<std::string, double>& durations);

/// shots * (duration + rep_delay).
double execution_time_estimate(double duration, std::size_t shots, double rep_delay);

}  // namespace qbench::transpiler
