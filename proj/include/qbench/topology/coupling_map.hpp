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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qbench::topology {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected graph of qubit pairs that may host a two-qubit gate.
/// Edges are stored normalised (first < second) and sorted.
class CouplingMap {
 public:
  CouplingMap() = default;
  CouplingMap(std::size_t num_nodes, std::vector<Edge> edges, std::string name = {});

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  std::size_t degree(std::size_t node) const { return adjacency_.at(node).size(); }
  std::size_t max_degree() const;
  const std::string& name() const noexcept { return name_; }

  bool has_edge(std::size_t a, std::size_t b) const;
  bool is_connected() const;

  /// Breadth-first hop counts from `source`; unreachable nodes get SIZE_MAX.
  std::vector<std::size_t> distances_from(std::size_t source) const;

  /// A shortest path from `from` to `to` inclusive of both ends, choosing the
  /// lowest-index neighbour on ties. Empty when unreachable.
  std::vector<std::size_t> shortest_path(std::size_t from, std::size_t to) const;

  friend bool operator==(const CouplingMap& a, const CouplingMap& b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::string name_;
};

enum class Family { AllToAll, Square, HeavyHex, Linear, Device };

std::string family_name(Family family);
/// Accepts `all_to_all`, `all-to-all`, `square`, `heavy_hex`, `heavy-hex`, `linear`, `device`.
std::optional<Family> parse_family(std::string_view name);

/// A family plus its size parameters. Only the fields relevant to the family
/// are meaningful.
struct TopologySpec {
  Family family = Family::Linear;
  std::size_t n = 1;
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t distance = 1;
  std::filesystem::path device_file;

  static TopologySpec linear(std::size_t n) { return {Family::Linear, n, 1, 1, 1, {}}; }
  static TopologySpec all_to_all(std::size_t n) { return {Family::AllToAll, n, 1, 1, 1, {}}; }
  static TopologySpec square(std::size_t rows, std::size_t cols) { return {Family::Square, rows * cols, rows, cols, 1, {}}; }
  static TopologySpec heavy_hex(std::size_t d) { return {Family::HeavyHex, 1, 1, 1, d, {}}; }
  static TopologySpec device(std::filesystem::path path) { return {Family::Device, 1, 1, 1, 1, std::move(path)}; }

  /// e.g. "linear(5)", "square(2x3)", "heavy_hex(3)", "device(path)".
  std::string describe() const;

  /// "linear:5", "square:2x3", "heavy_hex:3", "all_to_all:4", "device:<path>",
  /// or a bare family name (size left for smallest_fit).
  static TopologySpec parse(std::string_view text, bool* sized = nullptr);
};

CouplingMap linear(std::size_t n);
CouplingMap all_to_all(std::size_t n);
/// rows x cols grid, node r*cols + c, edges to the right and lower neighbours.
CouplingMap square(std::size_t rows, std::size_t cols);
/// Heavy-hex lattice of odd code distance d with (5d^2 - 2d - 1)/2 nodes.
/// Throws TopologyError for even or zero d.
CouplingMap heavy_hex(std::size_t d);

std::size_t heavy_hex_node_count(std::size_t d);

/// Builds the coupling map a fully sized spec describes. Device specs load the file.
CouplingMap build(const TopologySpec& spec);

/// Smallest member of `family` with at least `width` nodes. Square grids are
/// restricted to near-square shapes (cols - rows in {0, 1}).
TopologySpec smallest_fit_spec(Family family, std::size_t width);
CouplingMap smallest_fit(Family family, std::size_t width);

/// A device description: coupling map, per-gate durations in seconds and the
/// idle time between repeated executions.
struct Device {
  std::string name;
  CouplingMap coupling;
  std::map<std::string, double> gate_durations;
  double rep_delay = 0.0;
};

/// Reads the JSON device format:
///   {"name": str, "num_qubits": int, "edges": [[a, b], ...],
///    "gate_durations": {"cz": 6.8e-8, ...}, "rep_delay": 2.5e-4}
/// Throws TopologyError on malformed content or a disconnected graph.
Device load_device(const std::filesystem::path& path);
Device parse_device(const std::string& json_text);
std::string device_to_json(const Device& device);

}  // namespace qbench::topology
