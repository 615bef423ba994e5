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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbench/circuit/circuit.hpp"
#include "qbench/topology/coupling_map.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::harness {

struct RunConfig;

enum class Kind { Construct, Manipulate, TranspileAbstract, TranspileDevice };

std::string kind_name(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

/// Where a test's circuit comes from.
struct InputDescriptor {
  enum class Source { Qasm, Generator, Hamiltonian };
  Source source = Source::Qasm;
  /// QASM or Hamiltonian file.
  std::filesystem::path path;
  /// Generator name and arguments.
  std::string generator;
  nlohmann::json args = nlohmann::json::object();

  /// {"qasm_path": ...}, {"generator": {"name", "args"}} or {"hamiltonian_path": ..., "args": ...}.
  nlohmann::json to_json() const;
  static InputDescriptor from_json(const nlohmann::json& j);
};

/// Target of a transpile test. Abstract families are sized at run time from
/// the circuit width.
struct TargetDescriptor {
  topology::TopologySpec topology;
  bool sized = false;
  transpiler::Basis basis;
  int opt_level = 1;
};

struct WorkoutDef {
  std::string test_id;
  Kind kind = Kind::Construct;
  std::string suite;
  InputDescriptor input;
  std::optional<TargetDescriptor> target;
  bool expected_fail = false;
};

/// Group label of a test id: the topology family for abstract tests
/// ("abstract-linear/..." gives "linear"), otherwise the first path component.
std::string topology_group(const std::string& test_id);
/// Second path component of a test id.
std::string suite_group(const std::string& test_id);

/// Reads the workout registry named by the config and expands it into tests,
/// sorted by test id. Throws ConfigError for a missing corpus path, a
/// malformed registry or a duplicate test id.
std::vector<WorkoutDef> discover_tests(const RunConfig& config);
std::vector<WorkoutDef> discover_tests(const std::filesystem::path& registry, const RunConfig& config);

/// Builds a generator circuit. Arguments use the keys n, depth, seed and
/// secret; a key the generator does not take is a GeneratorError.
///   ghz(n)  bv(secret | n, seed)  qv(n, depth = n, seed)
///   clifford(n, depth = n, seed)  efficient_su2(n, depth = 2, seed), bound
///   dtc(n, depth = n, seed)  twirled_dtc(n, depth = n, seed)  mcx(n controls)
circuit::Circuit run_generator(const std::string& name, const nlohmann::json& args);
std::vector<std::string> generator_names();
/// Whether `name` takes argument `key`.
bool generator_accepts(const std::string& name, const std::string& key);

inline constexpr double kDefaultTrotterTheta = 0.1;

struct MaterializedInput {
  circuit::Circuit circuit;
  /// Parse time for QASM inputs, otherwise zero.
  double load_seconds = 0.0;
};

/// The circuit an input descriptor denotes. Hamiltonians give their Trotter
/// circuit with args theta (default 0.1) and reps (default 1).
MaterializedInput materialize(const InputDescriptor& input);

}  // namespace qbench::harness
