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

#include <algorithm>
#include <numeric>
#include <queue>

#include "qbench/error.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::transpiler {

using circuit::GateId;
using circuit::Instruction;
using circuit::Qubit;
using topology::CouplingMap;

std::string layout_strategy_name(LayoutStrategy s) {
  return s == LayoutStrategy::Identity ? "identity" : "degree_dense";
}

std::optional<LayoutStrategy> parse_layout_strategy(std::string_view name) {
  if (name == "identity") return LayoutStrategy::Identity;
  if (name == "degree_dense" || name == "degree-dense") return LayoutStrategy::DegreeDense;
  return std::nullopt;
}

Layout choose_layout(const Circuit& circuit, const CouplingMap& coupling, LayoutStrategy strategy) {
  const std::size_t n = circuit.num_qubits();
  if (n > coupling.num_nodes()) throw WidthExceeded(n, coupling.num_nodes());
  Layout layout(n);
  if (strategy == LayoutStrategy::Identity || n == 0) {
    std::iota(layout.begin(), layout.end(), std::size_t{0});
    return layout;
  }
  // Breadth-first region around the best-connected node.
  std::size_t root = 0;
  for (std::size_t v = 1; v < coupling.num_nodes(); ++v) {
    if (coupling.degree(v) > coupling.degree(root)) root = v;
  }
  std::vector<std::size_t> region;
  std::vector<bool> seen(coupling.num_nodes(), false);
  std::queue<std::size_t> frontier;
  frontier.push(root);
  seen[root] = true;
  while (!frontier.empty() && region.size() < n) {
    const auto u = frontier.front();
    frontier.pop();
    region.push_back(u);
    for (auto v : coupling.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        frontier.push(v);
      }
    }
  }
  // Disconnected device: fill from the remaining nodes in index order.
  for (std::size_t v = 0; v < coupling.num_nodes() && region.size() < n; ++v) {
    if (!seen[v]) {
      seen[v] = true;
      region.push_back(v);
    }
  }
  std::stable_sort(region.begin(), region.end(),
                   [&](auto a, auto b) { return coupling.degree(a) > coupling.degree(b); });

  std::vector<std::size_t> activity(n, 0);
  for (const auto& ins : circuit.instructions()) {
    if (!ins.is_two_qubit_gate()) continue;
    for (auto q : ins.qubits) ++activity[q];
  }
  std::vector<std::size_t> logical(n);
  std::iota(logical.begin(), logical.end(), std::size_t{0});
  std::stable_sort(logical.begin(), logical.end(), [&](auto a, auto b) { return activity[a] > activity[b]; });
  for (std::size_t k = 0; k < n; ++k) layout[logical[k]] = region[k];
  return layout;
}

Circuit apply_layout(const Circuit& circuit, const Layout& layout, std::size_t width) {
  Circuit out(width);
  for (const auto& r : circuit.cregs()) out.add_creg(r.name, r.width);
  for (const auto& [k, v] : circuit.metadata()) out.set_metadata(k, v);
  for (auto ins : circuit.instructions()) {
    for (auto& q : ins.qubits) q = static_cast<Qubit>(layout.at(q));
    out.append(std::move(ins));
  }
  return out;
}

TranspileResult route(const Circuit& circuit, const CouplingMap& coupling, LayoutStrategy strategy) {
  const std::size_t nodes = coupling.num_nodes();
  TranspileResult result;
  result.initial_layout = choose_layout(circuit, coupling, strategy);
  const Circuit placed = apply_layout(circuit, result.initial_layout, nodes);

  // position[s]: node currently holding the state that started on node s.
  // occupant is its inverse.
  std::vector<std::size_t> position(nodes), occupant(nodes);
  std::iota(position.begin(), position.end(), std::size_t{0});
  std::iota(occupant.begin(), occupant.end(), std::size_t{0});

  Circuit out = placed.empty_like();
  auto swap_nodes = [&](std::size_t a, std::size_t b) {
    out.add(GateId::Swap, {static_cast<Qubit>(a), static_cast<Qubit>(b)});
    ++result.swaps_inserted;
    std::swap(occupant[a], occupant[b]);
    position[occupant[a]] = a;
    position[occupant[b]] = b;
  };

  for (auto ins : placed.instructions()) {
    if (ins.gate.id != GateId::Barrier && ins.arity() > 2) {
      throw TranspileError("route needs 1Q/2Q gates, got '" + ins.gate.name + "'");
    }
    for (auto& q : ins.qubits) q = static_cast<Qubit>(position[q]);
    if (ins.is_two_qubit_gate() && !coupling.has_edge(ins.qubits[0], ins.qubits[1])) {
      const auto path = coupling.shortest_path(ins.qubits[0], ins.qubits[1]);
      if (path.empty()) {
        throw TranspileError("nodes " + std::to_string(ins.qubits[0]) + " and " + std::to_string(ins.qubits[1]) +
                             " are not connected");
      }
      for (std::size_t k = 0; k + 2 < path.size(); ++k) swap_nodes(path[k], path[k + 1]);
      ins.qubits[0] = static_cast<Qubit>(path[path.size() - 2]);
    }
    out.append(std::move(ins));
  }

  result.circuit = std::move(out);
  result.permutation = position;
  result.final_layout.resize(result.initial_layout.size());
  for (std::size_t i = 0; i < result.initial_layout.size(); ++i) {
    result.final_layout[i] = position[result.initial_layout[i]];
  }
  return result;
}

}  // namespace qbench::transpiler
