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

#include "qbench/harness/workout.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "qbench/circuit/binding.hpp"
#include "qbench/error.hpp"
#include "qbench/generators/generators.hpp"
#include "qbench/generators/hamiltonian.hpp"
#include "qbench/generators/rng.hpp"
#include "qbench/harness/config.hpp"
#include "qbench/log.hpp"
#include "qbench/qasm/qasm.hpp"

namespace qbench::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::Construct: return "construct";
    case Kind::Manipulate: return "manipulate";
    case Kind::TranspileAbstract: return "transpile_abstract";
    case Kind::TranspileDevice: return "transpile_device";
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
  for (Kind k : {Kind::Construct, Kind::Manipulate, Kind::TranspileAbstract, Kind::TranspileDevice}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

json InputDescriptor::to_json() const {
  switch (source) {
    case Source::Qasm: return {{"qasm_path", path.string()}};
    case Source::Generator: return {{"generator", {{"name", generator}, {"args", args}}}};
    case Source::Hamiltonian: return {{"hamiltonian_path", path.string()}, {"args", args}};
  }
  return json::object();
}

InputDescriptor InputDescriptor::from_json(const json& j) {
  InputDescriptor d;
  if (!j.is_object()) throw ProtocolError("input must be an object");
  if (j.contains("qasm_path")) {
    d.source = Source::Qasm;
    d.path = j.at("qasm_path").get<std::string>();
  } else if (j.contains("generator")) {
    const auto& g = j.at("generator");
    d.source = Source::Generator;
    d.generator = g.at("name").get<std::string>();
    d.args = g.value("args", json::object());
  } else if (j.contains("hamiltonian_path")) {
    d.source = Source::Hamiltonian;
    d.path = j.at("hamiltonian_path").get<std::string>();
    d.args = j.value("args", json::object());
  } else {
    throw ProtocolError("input needs qasm_path, generator or hamiltonian_path");
  }
  return d;
}

std::string topology_group(const std::string& test_id) {
  const std::string head = test_id.substr(0, test_id.find('/'));
  constexpr std::string_view prefix = "abstract-";
  if (head.rfind(prefix, 0) == 0) return head.substr(prefix.size());
  return head;
}

std::string suite_group(const std::string& test_id) {
  const auto a = test_id.find('/');
  if (a == std::string::npos) return {};
  const auto b = test_id.find('/', a + 1);
  return test_id.substr(a + 1, b == std::string::npos ? std::string::npos : b - a - 1);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

struct GeneratorInfo {
  const char* name;
  std::set<std::string> keys;
};

const std::vector<GeneratorInfo>& generator_table() {
  static const std::vector<GeneratorInfo> table{
      {"bv", {"n", "seed", "secret"}},
      {"clifford", {"n", "depth", "seed"}},
      {"dtc", {"n", "depth", "seed"}},
      {"efficient_su2", {"n", "depth", "seed"}},
      {"ghz", {"n"}},
      {"mcx", {"n"}},
      {"qv", {"n", "depth", "seed"}},
      {"twirled_dtc", {"n", "depth", "seed"}},
  };
  return table;
}

const GeneratorInfo* find_generator(const std::string& name) {
  for (const auto& g : generator_table()) {
    if (name == g.name) return &g;
  }
  return nullptr;
}

std::uint64_t uint_arg(const json& args, const char* key, std::optional<std::uint64_t> fallback = std::nullopt) {
  if (!args.contains(key)) {
    if (fallback) return *fallback;
    throw GeneratorError(std::string("missing generator argument '") + key + "'");
  }
  const auto& v = args.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw GeneratorError(std::string("generator argument '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

std::vector<std::string> generator_names() {
  std::vector<std::string> out;
  for (const auto& g : generator_table()) out.emplace_back(g.name);
  return out;
}

bool generator_accepts(const std::string& name, const std::string& key) {
  const auto* g = find_generator(name);
  return g != nullptr && g->keys.count(key) != 0;
}

circuit::Circuit run_generator(const std::string& name, const json& args) {
  const auto* info = find_generator(name);
  if (info == nullptr) throw GeneratorError("unknown generator '" + name + "'");
  if (!args.is_object()) throw GeneratorError("generator arguments must be an object");
  for (const auto& [key, value] : args.items()) {
    if (info->keys.count(key) == 0) throw GeneratorError("generator '" + name + "' takes no argument '" + key + "'");
  }
  const std::uint64_t seed = uint_arg(args, "seed", 0);

  if (name == "bv") {
    std::string secret;
    if (args.contains("secret")) {
      secret = args.at("secret").get<std::string>();
    } else {
      const auto n = uint_arg(args, "n");
      if (n < 2) throw GeneratorError("bv needs n >= 2");
      generators::Rng rng(seed);
      for (std::uint64_t i = 0; i + 1 < n; ++i) secret += rng.below(2) ? '1' : '0';
      if (secret.find('1') == std::string::npos) secret.back() = '1';
    }
    return generators::gen_bv(secret);
  }
  const auto n = uint_arg(args, "n");
  if (name == "ghz") return generators::gen_ghz(n);
  if (name == "mcx") return generators::decompose_mcx(n);
  if (name == "qv") return generators::gen_qv(n, uint_arg(args, "depth", n), seed);
  if (name == "clifford") return generators::gen_clifford_layers(n, uint_arg(args, "depth", n), seed);
  if (name == "dtc") return generators::gen_dtc(n, uint_arg(args, "depth", n), seed);
  if (name == "twirled_dtc") {
    return generators::pauli_twirl(generators::gen_dtc(n, uint_arg(args, "depth", n), seed), seed);
  }
  // efficient_su2
  const auto ansatz = generators::gen_efficient_su2(n, uint_arg(args, "depth", 2), seed);
  auto bound = circuit::bind_parameters(ansatz, generators::random_binding(ansatz, seed));
  return bound;
}

MaterializedInput materialize(const InputDescriptor& input) {
  switch (input.source) {
    case InputDescriptor::Source::Qasm: {
      auto loaded = qasm::load_qasm_file(input.path);
      return {std::move(loaded.circuit), loaded.parse_seconds};
    }
    case InputDescriptor::Source::Generator:
      return {run_generator(input.generator, input.args), 0.0};
    case InputDescriptor::Source::Hamiltonian: {
      const auto h = generators::load_pauli_hamiltonian(input.path);
      const double theta = input.args.value("theta", kDefaultTrotterTheta);
      const auto reps = input.args.value("reps", std::size_t{1});
      return {generators::gen_trotter(h, theta, reps), 0.0};
    }
  }
  throw GeneratorError("bad input descriptor");
}

// ---------------------------------------------------------------------------
// Discovery

namespace {

struct NamedInput {
  std::string name;
  InputDescriptor input;
};

std::string generator_test_name(const std::string& gen, const json& args) {
  std::string out = gen;
  const std::pair<const char*, const char*> keys[] = {{"n", "n"}, {"depth", "d"}, {"seed", "s"}, {"secret", "x"}};
  for (const auto& [key, tag] : keys) {
    if (!args.contains(key)) continue;
    const auto& v = args.at(key);
    out += std::string("_") + tag + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

// Expands list-valued arguments into their cartesian product.
std::vector<json> expand_args(const json& args) {
  std::vector<json> out{json::object()};
  for (const auto& [key, value] : args.items()) {
    const json values = value.is_array() ? value : json::array({value});
    std::vector<json> next;
    for (const auto& partial : out) {
      for (const auto& v : values) {
        json a = partial;
        a[key] = v;
        next.push_back(std::move(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw ConfigError("corpus directory not found: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ext) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NamedInput> suite_inputs(const json& suite, const fs::path& base) {
  std::vector<NamedInput> out;
  auto add_qasm = [&](const fs::path& p) {
    if (!fs::is_regular_file(p)) throw ConfigError("corpus file not found: " + p.string());
    InputDescriptor d;
    d.source = InputDescriptor::Source::Qasm;
    d.path = p;
    out.push_back({p.stem().string(), d});
  };
  if (suite.contains("qasm_dir")) {
    for (const auto& p : files_with_extension(resolve(base, suite.at("qasm_dir").get<std::string>()), ".qasm")) {
      add_qasm(p);
    }
  }
  if (suite.contains("qasm")) {
    for (const auto& f : suite.at("qasm")) add_qasm(resolve(base, f.get<std::string>()));
  }
  if (suite.contains("hamiltonian_dir")) {
    const json args = suite.value("args", json::object());
    for (const auto& p : files_with_extension(resolve(base, suite.at("hamiltonian_dir").get<std::string>()), ".ham")) {
      InputDescriptor d;
      d.source = InputDescriptor::Source::Hamiltonian;
      d.path = p;
      d.args = args;
      out.push_back({p.stem().string(), d});
    }
  }
  if (suite.contains("generators")) {
    for (const auto& g : suite.at("generators")) {
      const auto name = g.at("name").get<std::string>();
      if (find_generator(name) == nullptr) throw ConfigError("unknown generator '" + name + "'");
      for (auto& args : expand_args(g.value("args", json::object()))) {
        InputDescriptor d;
        d.source = InputDescriptor::Source::Generator;
        d.generator = name;
        d.args = args;
        out.push_back({generator_test_name(name, args), d});
      }
    }
  }
  return out;
}

std::vector<Kind> suite_kinds(const json& suite) {
  std::vector<Kind> kinds;
  const json list = suite.contains("kinds") ? suite.at("kinds") : json::array({suite.at("kind")});
  for (const auto& k : list) {
    auto kind = parse_kind(k.get<std::string>());
    if (!kind) throw ConfigError("unknown test kind '" + k.get<std::string>() + "'");
    kinds.push_back(*kind);
  }
  return kinds;
}

}  // namespace

std::vector<WorkoutDef> discover_tests(const RunConfig& config) { return discover_tests(config.workouts_file, config); }

std::vector<WorkoutDef> discover_tests(const fs::path& registry, const RunConfig& config) {
  std::ifstream in(registry);
  if (!in) throw ConfigError("workout registry not found: " + registry.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed workout registry " + registry.string() + ": " + e.what());
  }
  const fs::path base = registry.parent_path();

  std::vector<WorkoutDef> tests;
  try {
    for (const auto& suite : doc.at("suites")) {
      const auto suite_name = suite.at("name").get<std::string>();
      const auto inputs = suite_inputs(suite, base);
      for (Kind kind : suite_kinds(suite)) {
        for (const auto& [name, input] : inputs) {
          const bool generated = input.source != InputDescriptor::Source::Qasm;
          if (kind == Kind::Construct && input.source != InputDescriptor::Source::Generator) {
            throw ConfigError("construct suite '" + suite_name + "' needs generator inputs");
          }
          if (kind == Kind::Manipulate && !generated) {
            throw ConfigError("manipulate suite '" + suite_name + "' needs generator or hamiltonian inputs");
          }
          WorkoutDef def;
          def.kind = kind;
          def.suite = suite_name;
          def.input = input;
          const std::string tail = "/" + suite_name + "/" + name;
          switch (kind) {
            case Kind::Construct: def.test_id = "construct" + tail; break;
            case Kind::Manipulate: def.test_id = "manipulate" + tail; break;
            case Kind::TranspileDevice:
              def.test_id = "device" + tail;
              def.target = TargetDescriptor{topology::TopologySpec::device(config.device_file), true, config.basis,
                                            config.opt_level};
              break;
            case Kind::TranspileAbstract:
              for (auto family : config.topologies) {
                WorkoutDef t = def;
                t.test_id = "abstract-" + topology::family_name(family) + tail;
                topology::TopologySpec spec;
                spec.family = family;
                t.target = TargetDescriptor{spec, false, config.basis, config.opt_level};
                tests.push_back(std::move(t));
              }
              continue;
          }
          tests.push_back(std::move(def));
        }
      }
    }
    std::set<std::string> xfail;
    if (doc.contains("expected_fail")) {
      for (const auto& id : doc.at("expected_fail")) xfail.insert(id.get<std::string>());
    }
    for (auto& t : tests) {
      if (xfail.erase(t.test_id) != 0) t.expected_fail = true;
    }
    for (const auto& id : xfail) log::warn("expected_fail entry matches no test: " + id);
  } catch (const json::exception& e) {
    throw ConfigError("malformed workout registry " + registry.string() + ": " + e.what());
  }

  std::sort(tests.begin(), tests.end(), [](const auto& a, const auto& b) { return a.test_id < b.test_id; });
  for (std::size_t i = 1; i < tests.size(); ++i) {
    if (tests[i].test_id == tests[i - 1].test_id) throw ConfigError("duplicate test id " + tests[i].test_id);
  }
  return tests;
}

}  // namespace qbench::harness
