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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbench/topology/coupling_map.hpp"

/// Line-delimited JSON messages between the harness and worker processes.
namespace qbench::harness::wire {

inline constexpr int kProtocolVersion = 1;

enum class MessageType { Hello, RunTest, Result, Error };

std::string type_name(MessageType type);

/// A decoded line. `body` holds every field, unknown ones included, so a
/// decode/encode round trip preserves them.
struct WireMessage {
  MessageType type = MessageType::Hello;
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
};

/// One line of compact JSON without the trailing newline.
std::string wire_encode(const WireMessage& message);
/// Throws ProtocolError for malformed JSON, an unknown type, a wrong
/// protocol_version or missing required fields.
WireMessage wire_decode(std::string_view line);

struct Hello {
  std::string worker;
  std::string version;
  std::set<std::string> capabilities;
};

struct Target {
  std::string topology;
  std::size_t num_nodes = 0;
  std::vector<topology::Edge> edges;
  std::vector<std::string> basis;
  int opt_level = 1;
};

struct RunTest {
  std::string test_id;
  std::string kind;
  nlohmann::json input = nlohmann::json::object();
  std::optional<Target> target;
  std::string scratch_dir;
  double timeout_s = 0.0;
  nlohmann::json options = nlohmann::json::object();
};

struct Result {
  std::string test_id;
  bool ok = true;
  double wall_time_s = 0.0;
  std::string artifact_path;
  std::optional<double> qasm_load_time_s;
  /// Informational only. The harness recomputes metrics from the artifact.
  nlohmann::json worker_metrics;
};

struct Error {
  std::string test_id;
  std::string message;
};

WireMessage to_message(const Hello& hello);
WireMessage to_message(const RunTest& request);
WireMessage to_message(const Result& result);
WireMessage to_message(const Error& error);

/// Typed views. Throw ProtocolError when the message has another type or a
/// field has the wrong shape.
Hello as_hello(const WireMessage& message);
RunTest as_run_test(const WireMessage& message);
Result as_result(const WireMessage& message);
Error as_error(const WireMessage& message);

}  // namespace qbench::harness::wire
