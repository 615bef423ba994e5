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

// Scriptable worker for harness tests. Speaks the wire protocol and
// misbehaves on request.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <unistd.h>

#include "qbench/harness/builtin_worker.hpp"
#include "qbench/harness/protocol.hpp"

using namespace qbench::harness;

int main(int argc, char** argv) {
  CLI::App app{"stub worker"};
  std::string mode = "pass";
  double sleep_s = 0.0;
  std::string marker;
  std::string capabilities = "construct,manipulate,transpile_abstract,transpile_device";
  std::string child_pid_file;
  app.add_option("--mode", mode);
  app.add_option("--sleep", sleep_s);
  app.add_option("--marker", marker);
  app.add_option("--capabilities", capabilities);
  app.add_option("--child-pid-file", child_pid_file);
  CLI11_PARSE(app, argc, argv);

  if (!marker.empty()) std::ofstream(marker, std::ios::app) << getpid() << '\n';
  if (!child_pid_file.empty()) {
    const pid_t child = fork();
    if (child == 0) {
      std::this_thread::sleep_for(std::chrono::seconds(30));
      _exit(0);
    }
    std::ofstream(child_pid_file) << child << '\n';
  }
  if (mode == "nohello") {
    std::this_thread::sleep_for(std::chrono::seconds(30));
    return 0;
  }
  if (mode == "nohello-exit") return 0;

  wire::Hello hello{"stub", "0.0", {}};
  for (std::size_t start = 0; start <= capabilities.size();) {
    const auto comma = capabilities.find(',', start);
    const auto item = capabilities.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) hello.capabilities.insert(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::cout << wire::wire_encode(wire::to_message(hello)) << std::endl;

  for (std::string line; std::getline(std::cin, line);) {
    const auto request = wire::as_run_test(wire::wire_decode(line));
    if (sleep_s > 0.0) std::this_thread::sleep_for(std::chrono::duration<double>(sleep_s));
    if (mode == "crash") return 3;
    if (mode == "garbage") {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    if (mode == "error") {
      std::cout << wire::wire_encode(wire::to_message(wire::Error{request.test_id, "stub failure"})) << std::endl;
      continue;
    }
    auto reply = handle_request(request);
    if (reply.type == wire::MessageType::Result) {
      if (mode == "tamper") {
        reply.body["worker_metrics"] = {{"two_q_gates", 0}, {"two_q_depth", 0}};
        reply.body["two_q_gates"] = 0;
      } else if (mode == "wrong-id") {
        reply.body["test_id"] = "not/" + request.test_id;
      } else if (mode == "not-ok") {
        reply.body["ok"] = false;
      } else if (mode == "bad-artifact") {
        std::ofstream(request.scratch_dir + "/artifact.qasm") << "OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n";
      } else if (mode == "invalid-artifact") {
        std::ofstream(request.scratch_dir + "/artifact.qasm")
            << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << (request.target ? request.target->num_nodes : 2)
            << "];\nh q[0];\n";
      }
    }
    std::cout << wire::wire_encode(reply) << std::endl;
  }
  return 0;
}
