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

#include "qbench/harness/protocol.hpp"

#include <cmath>

#include "qbench/error.hpp"

namespace qbench::harness::wire {

using nlohmann::ordered_json;

std::string type_name(MessageType type) {
  switch (type) {
    case MessageType::Hello: return "hello";
    case MessageType::RunTest: return "run_test";
    case MessageType::Result: return "result";
    case MessageType::Error: return "error";
  }
  return "unknown";
}

namespace {

MessageType parse_type(const std::string& name) {
  for (auto t : {MessageType::Hello, MessageType::RunTest, MessageType::Result, MessageType::Error}) {
    if (type_name(t) == name) return t;
  }
  throw ProtocolError("unknown message type '" + name + "'");
}

void require(const ordered_json& body, const char* field, ordered_json::value_t kind, const char* what) {
  const auto it = body.find(field);
  if (it == body.end()) throw ProtocolError(std::string(what) + " message lacks '" + field + "'");
  const bool ok = kind == ordered_json::value_t::number_float ? it->is_number() : it->type() == kind;
  if (!ok) throw ProtocolError(std::string("field '") + field + "' of " + what + " has the wrong type");
}

void require_string(const ordered_json& body, const char* field, const char* what) {
  require(body, field, ordered_json::value_t::string, what);
}

ordered_json envelope(MessageType type) {
  return {{"type", type_name(type)}, {"protocol_version", kProtocolVersion}};
}

void expect_type(const WireMessage& m, MessageType type) {
  if (m.type != type) throw ProtocolError("expected " + type_name(type) + " message, got " + type_name(m.type));
}

double finite_number(const ordered_json& v, const char* field) {
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ProtocolError(std::string("field '") + field + "' is not finite");
  return d;
}

}  // namespace

std::string wire_encode(const WireMessage& message) {
  ordered_json body = message.body;
  body["type"] = type_name(message.type);
  body["protocol_version"] = kProtocolVersion;
  return body.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

WireMessage wire_decode(std::string_view line) {
  ordered_json body;
  try {
    body = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw ProtocolError(std::string("malformed message: ") + e.what());
  }
  if (!body.is_object()) throw ProtocolError("message is not an object");
  require_string(body, "type", "any");
  WireMessage m{parse_type(body.at("type").get<std::string>()), body};
  const auto version = body.find("protocol_version");
  if (version == body.end() || !version->is_number_integer()) throw ProtocolError("message lacks protocol_version");
  if (version->get<int>() != kProtocolVersion) {
    throw ProtocolError("unsupported protocol_version " + version->dump());
  }
  switch (m.type) {
    case MessageType::Hello:
      require_string(body, "worker", "hello");
      require_string(body, "version", "hello");
      require(body, "capabilities", ordered_json::value_t::array, "hello");
      break;
    case MessageType::RunTest:
      require_string(body, "test_id", "run_test");
      require_string(body, "kind", "run_test");
      require(body, "input", ordered_json::value_t::object, "run_test");
      break;
    case MessageType::Result:
      require_string(body, "test_id", "result");
      require(body, "ok", ordered_json::value_t::boolean, "result");
      break;
    case MessageType::Error:
      require_string(body, "message", "error");
      break;
  }
  return m;
}

WireMessage to_message(const Hello& hello) {
  auto body = envelope(MessageType::Hello);
  body["worker"] = hello.worker;
  body["version"] = hello.version;
  body["capabilities"] = hello.capabilities;
  return {MessageType::Hello, body};
}

WireMessage to_message(const RunTest& r) {
  auto body = envelope(MessageType::RunTest);
  body["test_id"] = r.test_id;
  body["kind"] = r.kind;
  body["input"] = ordered_json(r.input);
  if (r.target) {
    ordered_json edges = ordered_json::array();
    for (const auto& [a, b] : r.target->edges) edges.push_back({a, b});
    body["target"] = {{"topology", r.target->topology},
                      {"num_nodes", r.target->num_nodes},
                      {"edges", edges},
                      {"basis", r.target->basis},
                      {"opt_level", r.target->opt_level}};
  }
  body["scratch_dir"] = r.scratch_dir;
  body["timeout_s"] = r.timeout_s;
  if (!r.options.empty()) body["options"] = ordered_json(r.options);
  return {MessageType::RunTest, body};
}

WireMessage to_message(const Result& r) {
  auto body = envelope(MessageType::Result);
  body["test_id"] = r.test_id;
  body["ok"] = r.ok;
  body["wall_time_s"] = r.wall_time_s;
  body["artifact_path"] = r.artifact_path;
  if (r.qasm_load_time_s) body["qasm_load_time_s"] = *r.qasm_load_time_s;
  if (!r.worker_metrics.is_null()) body["worker_metrics"] = ordered_json(r.worker_metrics);
  return {MessageType::Result, body};
}

WireMessage to_message(const Error& e) {
  auto body = envelope(MessageType::Error);
  body["test_id"] = e.test_id;
  body["message"] = e.message;
  return {MessageType::Error, body};
}

Hello as_hello(const WireMessage& m) {
  expect_type(m, MessageType::Hello);
  try {
    Hello h;
    h.worker = m.body.at("worker").get<std::string>();
    h.version = m.body.at("version").get<std::string>();
    for (const auto& c : m.body.at("capabilities")) h.capabilities.insert(c.get<std::string>());
    return h;
  } catch (const ordered_json::exception& e) {
    throw ProtocolError(std::string("bad hello: ") + e.what());
  }
}

RunTest as_run_test(const WireMessage& m) {
  expect_type(m, MessageType::RunTest);
  try {
    RunTest r;
    r.test_id = m.body.at("test_id").get<std::string>();
    r.kind = m.body.at("kind").get<std::string>();
    r.input = nlohmann::json::parse(m.body.at("input").dump());
    if (m.body.contains("target") && !m.body.at("target").is_null()) {
      const auto& t = m.body.at("target");
      Target target;
      target.topology = t.value("topology", std::string{});
      target.num_nodes = t.at("num_nodes").get<std::size_t>();
      for (const auto& e : t.at("edges")) target.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
      target.basis = t.at("basis").get<std::vector<std::string>>();
      target.opt_level = t.value("opt_level", 1);
      r.target = std::move(target);
    }
    r.scratch_dir = m.body.value("scratch_dir", std::string{});
    r.timeout_s = m.body.contains("timeout_s") ? finite_number(m.body.at("timeout_s"), "timeout_s") : 0.0;
    if (m.body.contains("options")) r.options = nlohmann::json::parse(m.body.at("options").dump());
    return r;
  } catch (const ordered_json::exception& e) {
    throw ProtocolError(std::string("bad run_test: ") + e.what());
  }
}

Result as_result(const WireMessage& m) {
  expect_type(m, MessageType::Result);
  try {
    Result r;
    r.test_id = m.body.at("test_id").get<std::string>();
    r.ok = m.body.at("ok").get<bool>();
    if (m.body.contains("wall_time_s")) r.wall_time_s = finite_number(m.body.at("wall_time_s"), "wall_time_s");
    r.artifact_path = m.body.value("artifact_path", std::string{});
    if (m.body.contains("qasm_load_time_s") && !m.body.at("qasm_load_time_s").is_null()) {
      r.qasm_load_time_s = finite_number(m.body.at("qasm_load_time_s"), "qasm_load_time_s");
    }
    if (m.body.contains("worker_metrics")) r.worker_metrics = nlohmann::json::parse(m.body.at("worker_metrics").dump());
    return r;
  } catch (const ordered_json::exception& e) {
    throw ProtocolError(std::string("bad result: ") + e.what());
  }
}

Error as_error(const WireMessage& m) {
  expect_type(m, MessageType::Error);
  return {m.body.value("test_id", std::string{}), m.body.at("message").get<std::string>()};
}

}  // namespace qbench::harness::wire
