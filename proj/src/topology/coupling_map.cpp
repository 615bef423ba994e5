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

#include "qbench/topology/coupling_map.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <queue>
#include <sstream>

#include "qbench/error.hpp"

namespace qbench::topology {

CouplingMap::CouplingMap(std::size_t num_nodes, std::vector<Edge> edges, std::string name)
    : num_nodes_(num_nodes), adjacency_(num_nodes), name_(std::move(name)) {
  for (auto& [a, b] : edges) {
    if (a == b) throw TopologyError("self-loop on node " + std::to_string(a));
    if (a >= num_nodes || b >= num_nodes) {
      throw TopologyError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") outside " +
                          std::to_string(num_nodes) + " nodes");
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& n : adjacency_) std::sort(n.begin(), n.end());
}

std::size_t CouplingMap::max_degree() const {
  std::size_t best = 0;
  for (const auto& n : adjacency_) best = std::max(best, n.size());
  return best;
}

bool CouplingMap::has_edge(std::size_t a, std::size_t b) const {
  if (a >= num_nodes_ || b >= num_nodes_) return false;
  const auto& n = adjacency_[a];
  return std::binary_search(n.begin(), n.end(), b);
}

std::vector<std::size_t> CouplingMap::distances_from(std::size_t source) const {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(num_nodes_, kInf);
  if (source >= num_nodes_) return dist;
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (auto v : adjacency_[u]) {
      if (dist[v] == kInf) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

std::vector<std::size_t> CouplingMap::shortest_path(std::size_t from, std::size_t to) const {
  const auto dist = distances_from(to);
  if (from >= num_nodes_ || dist[from] == std::numeric_limits<std::size_t>::max()) return {};
  std::vector<std::size_t> path{from};
  std::size_t at = from;
  while (at != to) {
    for (auto v : adjacency_[at]) {
      if (dist[v] + 1 == dist[at]) {
        at = v;
        break;
      }
    }
    path.push_back(at);
  }
  return path;
}

bool CouplingMap::is_connected() const {
  if (num_nodes_ == 0) return true;
  const auto dist = distances_from(0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); });
}

std::string family_name(Family family) {
  switch (family) {
    case Family::AllToAll: return "all_to_all";
    case Family::Square: return "square";
    case Family::HeavyHex: return "heavy_hex";
    case Family::Linear: return "linear";
    case Family::Device: return "device";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  std::string norm(name);
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (Family f : {Family::AllToAll, Family::Square, Family::HeavyHex, Family::Linear, Family::Device}) {
    if (norm == family_name(f)) return f;
  }
  return std::nullopt;
}

std::string TopologySpec::describe() const {
  switch (family) {
    case Family::Linear: return "linear(" + std::to_string(n) + ")";
    case Family::AllToAll: return "all_to_all(" + std::to_string(n) + ")";
    case Family::Square: return "square(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
    case Family::HeavyHex: return "heavy_hex(" + std::to_string(distance) + ")";
    case Family::Device: return "device(" + device_file.string() + ")";
  }
  return "unknown";
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
    throw TopologyError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

TopologySpec TopologySpec::parse(std::string_view text, bool* sized) {
  const auto colon = text.find(':');
  const auto family = parse_family(text.substr(0, colon));
  if (!family) throw TopologyError("unknown topology family '" + std::string(text.substr(0, colon)) + "'");
  TopologySpec spec;
  spec.family = *family;
  if (sized) *sized = colon != std::string_view::npos;
  if (colon == std::string_view::npos) {
    if (*family == Family::Device) throw TopologyError("device topology needs a file: device:<path>");
    return spec;
  }
  const auto arg = text.substr(colon + 1);
  switch (*family) {
    case Family::Linear:
    case Family::AllToAll: spec.n = parse_count(arg, "size"); break;
    case Family::HeavyHex: spec.distance = parse_count(arg, "distance"); break;
    case Family::Square: {
      const auto x = arg.find('x');
      if (x == std::string_view::npos) throw TopologyError("square size must be ROWSxCOLS");
      spec.rows = parse_count(arg.substr(0, x), "rows");
      spec.cols = parse_count(arg.substr(x + 1), "cols");
      spec.n = spec.rows * spec.cols;
      break;
    }
    case Family::Device: spec.device_file = std::string(arg); break;
  }
  return spec;
}

CouplingMap linear(std::size_t n) {
  if (n == 0) throw TopologyError("linear topology needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return CouplingMap(n, std::move(edges), "linear(" + std::to_string(n) + ")");
}

CouplingMap all_to_all(std::size_t n) {
  if (n == 0) throw TopologyError("all_to_all topology needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return CouplingMap(n, std::move(edges), "all_to_all(" + std::to_string(n) + ")");
}

CouplingMap square(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw TopologyError("square topology needs rows, cols >= 1");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t node = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(node, node + 1);
      if (r + 1 < rows) edges.emplace_back(node, node + cols);
    }
  }
  return CouplingMap(rows * cols, std::move(edges),
                     "square(" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
}

std::size_t heavy_hex_node_count(std::size_t d) { return (5 * d * d - 2 * d - 1) / 2; }

// d rows, each a chain of 2d-1 nodes alternating data (even position) and
// flag (odd position) qubits. Consecutive rows are joined by (d+1)/2 bridge
// qubits. Even gaps bridge positions 1 mod 4 plus the right end, odd gaps
// positions 3 mod 4 plus the left end. Bulk cells have twelve nodes, boundary
// cells ten. Chain nodes are numbered row-major, bridge nodes after them gap by gap.
CouplingMap heavy_hex(std::size_t d) {
  if (d == 0 || d % 2 == 0) throw TopologyError("heavy_hex distance must be odd and >= 1, got " + std::to_string(d));
  const std::size_t row_len = 2 * d - 1;
  auto chain = [&](std::size_t row, std::size_t pos) { return row * row_len + pos; };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t p = 0; p + 1 < row_len; ++p) edges.emplace_back(chain(r, p), chain(r, p + 1));
  }
  std::size_t next = d * row_len;
  for (std::size_t gap = 0; gap + 1 < d; ++gap) {
    const bool even = gap % 2 == 0;
    std::vector<std::size_t> positions;
    if (!even) positions.push_back(0);
    for (std::size_t p = even ? 1 : 3; p < row_len; p += 4) positions.push_back(p);
    if (even) positions.push_back(row_len - 1);
    for (auto p : positions) {
      const std::size_t bridge = next++;
      edges.emplace_back(chain(gap, p), bridge);
      edges.emplace_back(bridge, chain(gap + 1, p));
    }
  }
  return CouplingMap(next, std::move(edges), "heavy_hex(" + std::to_string(d) + ")");
}

CouplingMap build(const TopologySpec& spec) {
  switch (spec.family) {
    case Family::Linear: return linear(spec.n);
    case Family::AllToAll: return all_to_all(spec.n);
    case Family::Square: return square(spec.rows, spec.cols);
    case Family::HeavyHex: return heavy_hex(spec.distance);
    case Family::Device: return load_device(spec.device_file).coupling;
  }
  throw TopologyError("unknown family");
}

TopologySpec smallest_fit_spec(Family family, std::size_t width) {
  if (width == 0) throw TopologyError("smallest_fit needs width >= 1");
  switch (family) {
    case Family::Linear: return TopologySpec::linear(width);
    case Family::AllToAll: return TopologySpec::all_to_all(width);
    case Family::Square: {
      for (std::size_t s = 1;; ++s) {
        if (s * s >= width) return TopologySpec::square(s, s);
        if (s * (s + 1) >= width) return TopologySpec::square(s, s + 1);
      }
    }
    case Family::HeavyHex: {
      std::size_t d = 1;
      while (heavy_hex_node_count(d) < width) d += 2;
      return TopologySpec::heavy_hex(d);
    }
    case Family::Device: throw TopologyError("device topologies have a fixed size");
  }
  throw TopologyError("unknown family");
}

CouplingMap smallest_fit(Family family, std::size_t width) { return build(smallest_fit_spec(family, width)); }

Device parse_device(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw TopologyError(std::string("malformed device file: ") + e.what());
  }
  try {
    Device device;
    device.name = doc.value("name", std::string("device"));
    const auto n = doc.at("num_qubits").get<long long>();
    if (n <= 0) throw TopologyError("device num_qubits must be positive");
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw TopologyError("device edges must be [a, b] pairs");
      const auto a = e[0].get<long long>();
      const auto b = e[1].get<long long>();
      if (a < 0 || b < 0) throw TopologyError("negative qubit index in device edge");
      edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    device.coupling = CouplingMap(static_cast<std::size_t>(n), std::move(edges), device.name);
    if (!device.coupling.is_connected()) throw TopologyError("device coupling map is disconnected");
    for (const auto& [gate, seconds] : doc.at("gate_durations").items()) {
      const double v = seconds.get<double>();
      if (!(v >= 0.0) || !std::isfinite(v)) throw TopologyError("duration of '" + gate + "' must be >= 0 seconds");
      device.gate_durations[gate] = v;
    }
    device.rep_delay = doc.at("rep_delay").get<double>();
    if (!(device.rep_delay >= 0.0) || !std::isfinite(device.rep_delay)) throw TopologyError("rep_delay must be >= 0");
    return device;
  } catch (const json::exception& e) {
    throw TopologyError(std::string("malformed device file: ") + e.what());
  }
}

Device load_device(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open device file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_device(buffer.str());
}

std::string device_to_json(const Device& device) {
  nlohmann::ordered_json doc;
  doc["name"] = device.name;
  doc["num_qubits"] = device.coupling.num_nodes();
  auto edges = nlohmann::ordered_json::array();
  for (auto [a, b] : device.coupling.edges()) edges.push_back({a, b});
  doc["edges"] = std::move(edges);
  doc["gate_durations"] = device.gate_durations;
  doc["rep_delay"] = device.rep_delay;
  return doc.dump(1);
}

}  // namespace qbench::topology
