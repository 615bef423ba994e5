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

#include "qbench/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <boost/tokenizer.hpp>

#include "qbench/error.hpp"
#include "qbench/log.hpp"

namespace qbench::harness {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_positive(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto text = trim(value);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v) || v <= 0.0) {
    throw ConfigError(key + " must be a positive number, got '" + value + "'");
  }
  return v;
}

long parse_integer(const std::string& key, const std::string& value) {
  long v = 0;
  const auto text = trim(value);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + " must be an integer, got '" + value + "'");
  }
  return v;
}

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(trim(value));
  if (p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

void warn_unknown(const std::string& section, const std::string& key) {
  log::warn("config: unknown key '" + key + "' in [" + section + "]");
}

}  // namespace

std::vector<std::string> split_command(const std::string& line) {
  using Separator = boost::escaped_list_separator<char>;
  boost::tokenizer<Separator> tokens(line, Separator('\\', ' ', '"'));
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config parse error at line " + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && section.rfind("worker.", 0) != 0) {
      if (!body.data().empty()) log::warn("config: key '" + section + "' outside any section ignored");
      continue;
    }
    if (section == "general") {
      for (const auto& [key, node] : body) {
        const auto value = node.data();
        if (key == "timeout") {
          config.timeout_s = parse_positive(key, value);
        } else if (key == "skip_file") {
          config.skip_file = resolve(base_dir, value);
        } else if (key == "workouts") {
          config.workouts_file = resolve(base_dir, value);
        } else if (key == "scratch_dir") {
          config.scratch_dir = resolve(base_dir, value);
        } else if (key == "shots") {
          const long shots = parse_integer(key, value);
          if (shots <= 0) throw ConfigError("shots must be positive");
          config.shots = static_cast<std::size_t>(shots);
        } else if (key == "single_execution") {
          if (trim(value) != "true") throw ConfigError("single_execution cannot be disabled");
        } else {
          warn_unknown(section, key);
        }
      }
    } else if (section == "transpile") {
      for (const auto& [key, node] : body) {
        const auto value = node.data();
        if (key == "topologies") {
          config.topologies.clear();
          for (const auto& name : split_list(value)) {
            auto family = topology::parse_family(name);
            if (!family || *family == topology::Family::Device) {
              throw ConfigError("unknown topology family '" + name + "'");
            }
            config.topologies.push_back(*family);
          }
          if (config.topologies.empty()) throw ConfigError("topologies must not be empty");
        } else if (key == "basis_gates") {
          config.basis.clear();
          for (const auto& g : split_list(value)) config.basis.insert(g);
          if (config.basis.empty()) throw ConfigError("basis_gates must not be empty");
        } else if (key == "device_file") {
          config.device_file = resolve(base_dir, value);
        } else if (key == "opt_level") {
          const long level = parse_integer(key, value);
          if (level < 0 || level > 1) throw ConfigError("opt_level must be 0 or 1");
          config.opt_level = static_cast<int>(level);
        } else {
          warn_unknown(section, key);
        }
      }
    } else if (section.rfind("worker.", 0) == 0) {
      WorkerConfig worker;
      worker.name = section.substr(7);
      if (worker.name.empty()) throw ConfigError("worker section needs a name");
      for (const auto& [key, node] : body) {
        if (key == "exec") {
          worker.argv = split_command(node.data());
          if (worker.argv.empty()) throw ConfigError("empty exec for worker " + worker.name);
        } else {
          worker.options[key] = trim(node.data());
        }
      }
      if (worker.argv.empty() && worker.name != "builtin") {
        throw ConfigError("worker " + worker.name + " has no exec line");
      }
      config.workers[worker.name] = std::move(worker);
    } else {
      log::warn("config: unknown section [" + section + "]");
    }
  }
  return config;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json topologies = nlohmann::json::array();
  for (auto f : config.topologies) topologies.push_back(topology::family_name(f));
  nlohmann::json workers = nlohmann::json::object();
  for (const auto& [name, w] : config.workers) workers[name] = {{"exec", w.argv}, {"options", w.options}};
  return {{"timeout_s", config.timeout_s},
          {"topologies", topologies},
          {"basis_gates", std::vector<std::string>(config.basis.begin(), config.basis.end())},
          {"device_file", config.device_file.string()},
          {"opt_level", config.opt_level},
          {"skip_file", config.skip_file.string()},
          {"workouts", config.workouts_file.string()},
          {"shots", config.shots},
          {"single_execution", RunConfig::single_execution},
          {"workers", workers}};
}

}  // namespace qbench::harness
