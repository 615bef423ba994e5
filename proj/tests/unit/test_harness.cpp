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

#include <catch_amalgamated.hpp>

#include <chrono>
#include <csignal>
#include <set>
#include <thread>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qbench/circuit/metrics.hpp"
#include "qbench/circuit/binding.hpp"
#include "qbench/error.hpp"
#include "qbench/generators/generators.hpp"
#include "qbench/harness/builtin_worker.hpp"
#include "qbench/harness/harness.hpp"
#include "qbench/harness/subprocess.hpp"
#include "qbench/log.hpp"
#include "qbench/qasm/qasm.hpp"
#include "qbench/verify/verify.hpp"

using namespace qbench;
using namespace qbench::harness;
using qbench::testing::TempDir;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> capture_warnings(const std::function<void()>& fn) {
  std::vector<std::string> warnings;
  log::ScopedWarningCapture capture([&](const std::string& m) { warnings.push_back(m); });
  fn();
  return warnings;
}

double seconds(std::chrono::steady_clock::duration d) { return std::chrono::duration<double>(d).count(); }

const topology::TopologySpec kLinear4 = topology::TopologySpec::linear(4);

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

TEST_CASE("empty config gives defaults") {
  const auto c = parse_config("");
  CHECK(c.timeout_s == 3600.0);
  CHECK(c.topologies == std::vector<topology::Family>{topology::Family::AllToAll, topology::Family::Square,
                                                      topology::Family::HeavyHex, topology::Family::Linear});
  CHECK(c.basis == transpiler::Basis{"cz", "rz", "sx", "x"});
  CHECK(c.opt_level == 1);
  CHECK(c.shots == 4096);
  CHECK(RunConfig::single_execution);
  CHECK(c.workers.empty());
  CHECK(fs::exists(c.device_file));
  CHECK(fs::exists(c.workouts_file));
}

TEST_CASE("config values override defaults") {
  const auto c = parse_config(R"(
# comment
[general]
timeout = 5
skip_file = local/skip.txt
shots = 100

[transpile]
topologies = linear, heavy-hex
basis_gates = u3 , cx
device_file = /abs/dev.json
opt_level = 0

[worker.ext]
exec = python3 "my adapter.py" --flag
mode = fast
)",
                              "/base");
  CHECK(c.timeout_s == 5.0);
  CHECK(c.skip_file == fs::path("/base/local/skip.txt"));
  CHECK(c.shots == 100);
  CHECK(c.topologies == std::vector<topology::Family>{topology::Family::Linear, topology::Family::HeavyHex});
  CHECK(c.basis == transpiler::Basis{"cx", "u3"});
  CHECK(c.device_file == fs::path("/abs/dev.json"));
  CHECK(c.opt_level == 0);
  REQUIRE(c.workers.count("ext") == 1);
  CHECK(c.workers.at("ext").argv == std::vector<std::string>{"python3", "my adapter.py", "--flag"});
  CHECK(c.workers.at("ext").options == std::map<std::string, std::string>{{"mode", "fast"}});

  const auto j = config_to_json(c);
  CHECK(j.at("timeout_s") == 5.0);
  CHECK(j.at("single_execution") == true);
}

TEST_CASE("unknown config keys warn without failing") {
  RunConfig c;
  const auto warnings = capture_warnings([&] { c = parse_config("[general]\ntimeout = 7\nfuture_key = 1\n[extra]\na = b\n"); });
  CHECK(c.timeout_s == 7.0);
  REQUIRE(warnings.size() == 2);
  CHECK(warnings[0].find("future_key") != std::string::npos);
  CHECK(warnings[1].find("extra") != std::string::npos);
}

TEST_CASE("invalid config values are errors") {
  for (const char* text : {"[general]\ntimeout = 0\n", "[general]\ntimeout = -3\n", "[general]\ntimeout = abc\n",
                           "[general]\ntimeout = 5s\n", "[general]\ntimeout = inf\n", "[transpile]\nbasis_gates = ,\n",
                           "[transpile]\nopt_level = 2\n", "[transpile]\ntopologies = torus\n",
                           "[transpile]\ntopologies = device\n", "[general]\nsingle_execution = false\n",
                           "[worker.x]\nmode = 1\n", "[general\ntimeout = 1\n", "[general]\ntimeout = 1\ntimeout = 2\n",
                           "[general]\nshots = 0\n"}) {
    INFO(text);
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/qbench.conf"), ConfigError);
}

TEST_CASE("config file paths resolve against the file") {
  TempDir dir;
  qbench::testing::write_file(dir / "sub/run.conf", "[general]\nskip_file = skip.txt\nworkouts = ../w.json\n");
  const auto c = load_config(dir / "sub/run.conf");
  CHECK(c.skip_file == dir.path() / "sub/skip.txt");
  CHECK(c.workouts_file == dir.path() / "w.json");
}

TEST_CASE("bundled default.conf loads") {
  const auto c = load_config(fs::path(QBENCH_DATA_DIR) / "default.conf");
  CHECK(c.timeout_s == 3600.0);
  CHECK(c.topologies.size() == 4);
  CHECK(c.workers.empty());
  CHECK(fs::exists(c.device_file));
}

TEST_CASE("split_command") {
  CHECK(split_command("a b  c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_command(R"(x "y z" w\ v)") == std::vector<std::string>{"x", "y z", "w v"});
  CHECK(split_command("").empty());
}

TEST_CASE("builtin worker section without exec runs the current executable") {
  const auto c = parse_config("[worker.builtin]\nlabel = baseline\n");
  REQUIRE(c.workers.count("builtin") == 1);
  Worker w(c.workers.at("builtin"));
  CHECK(w.config().argv.size() == 2);
  CHECK(w.config().argv[1] == "worker");
  CHECK(w.config().options.at("label") == "baseline");
}

// ---------------------------------------------------------------------------
// Skipfile

TEST_CASE("skipfile parsing and appending") {
  CHECK(Skipfile::parse("a/b\n\n# only comment\nc/d  # host=x timeout=1s\n  e  \n") ==
        std::set<std::string, std::less<>>{"a/b", "c/d", "e"});

  TempDir dir;
  Skipfile missing(dir / "none.txt");
  CHECK(missing.ids().empty());

  const auto path = dir / "skip.txt";
  Skipfile s(path);
  s.add("abstract-linear/x/y", "hostA", 1.5);
  s.add("abstract-linear/x/y", "hostA", 1.5);
  CHECK(s.contains("abstract-linear/x/y"));
  const auto text = qbench::testing::read_file(path);
  CHECK(qbench::testing::count_lines(path) == 1);
  CHECK(text.rfind("abstract-linear/x/y  # host=hostA timeout=1.5s date=", 0) == 0);
  CHECK(Skipfile(path).contains("abstract-linear/x/y"));
}

// ---------------------------------------------------------------------------
// Wire protocol

TEST_CASE("hello round trip") {
  const wire::Hello hello{"w", "1.2", {"construct", "transpile_abstract"}};
  const auto line = wire::wire_encode(wire::to_message(hello));
  CHECK(line.find('\n') == std::string::npos);
  const auto decoded = wire::wire_decode(line);
  CHECK(decoded.type == wire::MessageType::Hello);
  CHECK(wire::wire_encode(decoded) == line);
  const auto back = wire::as_hello(decoded);
  CHECK(back.worker == "w");
  CHECK(back.version == "1.2");
  CHECK(back.capabilities == hello.capabilities);
}

TEST_CASE("unknown fields survive a round trip") {
  const std::string line =
      R"({"type":"result","protocol_version":1,"test_id":"a/b","ok":true,"wall_time_s":0.5,"artifact_path":"x.qasm","vendor":{"k":[1,2]}})";
  const auto m = wire::wire_decode(line);
  CHECK(wire::wire_encode(m) == line);
  CHECK(m.body.at("vendor").at("k").at(1) == 2);
}

TEST_CASE("run_test round trip with target") {
  wire::RunTest r;
  r.test_id = "abstract-linear/s/t";
  r.kind = "transpile_abstract";
  r.input = {{"qasm_path", "/tmp/in.qasm"}};
  r.target = wire::Target{"linear(3)", 3, {{0, 1}, {1, 2}}, {"cz", "rz", "sx"}, 0};
  r.scratch_dir = "/tmp/s";
  r.timeout_s = 12.5;
  r.options = {{"mode", "fast"}};
  const auto back = wire::as_run_test(wire::wire_decode(wire::wire_encode(wire::to_message(r))));
  CHECK(back.test_id == r.test_id);
  CHECK(back.kind == r.kind);
  CHECK(back.input == r.input);
  REQUIRE(back.target);
  CHECK(back.target->num_nodes == 3);
  CHECK(back.target->edges == r.target->edges);
  CHECK(back.target->basis == r.target->basis);
  CHECK(back.target->opt_level == 0);
  CHECK(back.scratch_dir == "/tmp/s");
  CHECK(back.timeout_s == 12.5);
  CHECK(back.options == r.options);
}

TEST_CASE("result and error round trips") {
  wire::Result r{"a/b", true, 0.25, "/x/artifact.qasm", 0.125, json{{"two_q_gates", 3}}};
  const auto back = wire::as_result(wire::wire_decode(wire::wire_encode(wire::to_message(r))));
  CHECK(back.test_id == "a/b");
  CHECK(back.ok);
  CHECK(back.wall_time_s == 0.25);
  CHECK(back.artifact_path == "/x/artifact.qasm");
  CHECK(back.qasm_load_time_s == 0.125);
  CHECK(back.worker_metrics == json{{"two_q_gates", 3}});

  const auto e = wire::as_error(wire::wire_decode(wire::wire_encode(wire::to_message(wire::Error{"a/b", "boom\nline"}))));
  CHECK(e.test_id == "a/b");
  CHECK(e.message == "boom\nline");
  CHECK_THROWS_AS(wire::as_hello(wire::to_message(wire::Error{"", "x"})), ProtocolError);
}

TEST_CASE("malformed wire lines are rejected") {
  const char* bad[] = {
      "",
      "not json",
      "[1,2]",
      R"({"protocol_version":1})",
      R"({"type":"bogus","protocol_version":1})",
      R"({"type":"hello","worker":"w","version":"1","capabilities":[]})",
      R"({"type":"hello","protocol_version":2,"worker":"w","version":"1","capabilities":[]})",
      R"({"type":"hello","protocol_version":1,"version":"1","capabilities":[]})",
      R"({"type":"hello","protocol_version":1,"worker":"w","version":"1","capabilities":"all"})",
      R"({"type":"result","protocol_version":1,"ok":true})",
      R"({"type":"result","protocol_version":1,"test_id":"a","ok":"yes"})",
      R"({"type":"run_test","protocol_version":1,"test_id":"a","kind":"construct"})",
      R"({"type":"error","protocol_version":1,"test_id":"a"})",
  };
  for (const char* line : bad) {
    INFO(line);
    CHECK_THROWS_AS(wire::wire_decode(line), ProtocolError);
  }
}

TEST_CASE("1 MiB payload round trips") {
  std::mt19937_64 rng(9);
  std::string payload(1 << 20, ' ');
  for (auto& ch : payload) ch = static_cast<char>(32 + rng() % 95);
  payload[100] = '\n';
  payload[200] = '"';
  payload[300] = '\\';
  wire::Result r{"big/test", true, 1.0, "a.qasm", std::nullopt, json{{"blob", payload}}};
  const auto line = wire::wire_encode(wire::to_message(r));
  CHECK(line.find('\n') == std::string::npos);
  const auto back = wire::as_result(wire::wire_decode(line));
  CHECK(back.worker_metrics.at("blob").get<std::string>() == payload);
}

// ---------------------------------------------------------------------------
// Discovery

namespace {

void write_fixture_corpus(const TempDir& dir) {
  const std::string ghz3 = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\n";
  qbench::testing::write_file(dir / "qasm/a.qasm", ghz3);
  qbench::testing::write_file(dir / "qasm/b.qasm", ghz3);
  qbench::testing::write_file(dir / "qasm/c.qasm", ghz3);
  qbench::testing::write_file(dir / "qasm/notes.txt", "ignored");
}

}  // namespace

TEST_CASE("discovery expands abstract tests per family") {
  TempDir dir;
  write_fixture_corpus(dir);
  qbench::testing::write_file(dir / "w.json", R"({"suites":[{"name":"s","kinds":["transpile_abstract"],"qasm_dir":"qasm"}]})");
  RunConfig config;
  const auto tests = discover_tests(dir / "w.json", config);
  REQUIRE(tests.size() == 12);
  std::vector<std::string> ids;
  for (const auto& t : tests) {
    ids.push_back(t.test_id);
    CHECK(t.kind == Kind::TranspileAbstract);
    REQUIRE(t.target);
    CHECK_FALSE(t.target->sized);
    CHECK(t.target->basis == config.basis);
  }
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK(ids.front() == "abstract-all_to_all/s/a");
  CHECK(ids.back() == "abstract-square/s/c");

  config.topologies = {topology::Family::Linear};
  CHECK(discover_tests(dir / "w.json", config).size() == 3);
}

TEST_CASE("discovery of device, generator and expected-fail entries") {
  TempDir dir;
  write_fixture_corpus(dir);
  qbench::testing::write_file(dir / "w.json", R"({
    "suites": [
      {"name": "dev", "kind": "transpile_device", "qasm": ["qasm/a.qasm"]},
      {"name": "gen", "kinds": ["construct"], "generators": [{"name": "qv", "args": {"n": [2, 3], "seed": [1, 2]}}]}
    ],
    "expected_fail": ["construct/gen/qv_n3_s2", "no/such/test"]
  })");
  RunConfig config;
  std::vector<WorkoutDef> tests;
  const auto warnings = capture_warnings([&] { tests = discover_tests(dir / "w.json", config); });
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("no/such/test") != std::string::npos);
  REQUIRE(tests.size() == 5);
  CHECK(tests[0].test_id == "construct/gen/qv_n2_s1");
  CHECK(tests[3].test_id == "construct/gen/qv_n3_s2");
  CHECK(tests[3].expected_fail);
  CHECK(tests[3].input.args == json{{"n", 3}, {"seed", 2}});
  CHECK_FALSE(tests[0].expected_fail);
  CHECK(tests[4].test_id == "device/dev/a");
  CHECK(tests[4].target->topology.family == topology::Family::Device);
  CHECK(tests[4].target->topology.device_file == config.device_file);
}

TEST_CASE("discovery errors") {
  TempDir dir;
  write_fixture_corpus(dir);
  RunConfig config;
  auto expect_error = [&](const std::string& registry) {
    qbench::testing::write_file(dir / "w.json", registry);
    INFO(registry);
    CHECK_THROWS_AS(discover_tests(dir / "w.json", config), ConfigError);
  };
  expect_error(R"({"suites":[{"name":"s","kind":"transpile_abstract","qasm_dir":"missing"}]})");
  expect_error(R"({"suites":[{"name":"s","kind":"transpile_abstract","qasm":["qasm/a.qasm","qasm/a.qasm"]}]})");
  expect_error(R"({"suites":[{"name":"s","kind":"construct","qasm":["qasm/a.qasm"]}]})");
  expect_error(R"({"suites":[{"name":"s","kind":"teleport","qasm":["qasm/a.qasm"]}]})");
  expect_error(R"({"suites":[{"name":"s","kind":"construct","generators":[{"name":"nope"}]}]})");
  expect_error(R"({"suites":[{"kind":"construct"}]})");
  expect_error("{not json");
  CHECK_THROWS_AS(discover_tests(dir / "absent.json", config), ConfigError);
}

TEST_CASE("bundled registry") {
  const RunConfig config;
  const auto tests = discover_tests(config);
  std::size_t abstract = 0, device = 0;
  std::set<std::string> ids;
  for (const auto& t : tests) {
    ids.insert(t.test_id);
    abstract += t.kind == Kind::TranspileAbstract;
    device += t.kind == Kind::TranspileDevice;
  }
  CHECK(ids.size() == tests.size());
  CHECK(abstract >= 500);
  CHECK(device > 0);
  CHECK(ids.count("device/wide/ghz_433") == 1);
  CHECK(std::is_sorted(tests.begin(), tests.end(), [](const auto& a, const auto& b) { return a.test_id < b.test_id; }));
}

TEST_CASE("test id groups") {
  CHECK(topology_group("abstract-heavy_hex/generated/qv_n4_s1") == "heavy_hex");
  CHECK(topology_group("device/wide/ghz_433") == "device");
  CHECK(topology_group("construct/c/x") == "construct");
  CHECK(suite_group("abstract-heavy_hex/generated/qv_n4_s1") == "generated");
  CHECK(suite_group("noslash").empty());
}

TEST_CASE("generator registry") {
  CHECK(circuit::op_counts(run_generator("ghz", {{"n", 3}})) == std::map<std::string, std::size_t>{{"cx", 2}, {"h", 1}});
  CHECK(run_generator("qv", {{"n", 4}, {"seed", 3}}) == generators::gen_qv(4, 4, 3));
  CHECK(run_generator("dtc", {{"n", 4}, {"depth", 2}, {"seed", 3}}) == generators::gen_dtc(4, 2, 3));
  CHECK(run_generator("bv", {{"secret", "101"}}) == generators::gen_bv("101"));
  const auto bv = run_generator("bv", {{"n", 6}, {"seed", 4}});
  CHECK(bv.num_qubits() == 6);
  CHECK(circuit::two_qubit_gate_count(bv) >= 1);
  CHECK(run_generator("mcx", {{"n", 4}}).num_qubits() == 7);
  CHECK(circuit::free_symbols(run_generator("efficient_su2", {{"n", 3}, {"seed", 1}})).empty());
  CHECK(generator_accepts("qv", "seed"));
  CHECK_FALSE(generator_accepts("ghz", "seed"));
  CHECK_THROWS_AS(run_generator("ghz", {{"n", 3}, {"seed", 1}}), GeneratorError);
  CHECK_THROWS_AS(run_generator("ghz", json::object()), GeneratorError);
  CHECK_THROWS_AS(run_generator("ghz", {{"n", -2}}), GeneratorError);
  CHECK_THROWS_AS(run_generator("warp", {{"n", 2}}), GeneratorError);
}

TEST_CASE("input descriptors round trip through JSON") {
  const auto g = qbench::testing::generator_input("qv", {{"n", 3}, {"seed", 1}});
  const auto back = InputDescriptor::from_json(g.to_json());
  CHECK(back.source == InputDescriptor::Source::Generator);
  CHECK(back.generator == "qv");
  CHECK(back.args == g.args);
  InputDescriptor h;
  h.source = InputDescriptor::Source::Hamiltonian;
  h.path = "/x/y.ham";
  h.args = {{"theta", 0.5}};
  const auto hb = InputDescriptor::from_json(h.to_json());
  CHECK(hb.source == InputDescriptor::Source::Hamiltonian);
  CHECK(hb.path == h.path);
  CHECK(hb.args == h.args);
  CHECK_THROWS_AS(InputDescriptor::from_json(json{{"other", 1}}), ProtocolError);
}

// ---------------------------------------------------------------------------
// Subprocess

TEST_CASE("subprocess line exchange and deadline") {
  Subprocess cat({"cat"});
  CHECK(cat.write_line("hello"));
  const auto line = cat.read_line(Clock::now() + std::chrono::seconds(5));
  REQUIRE(line);
  CHECK(*line == "hello");
  const auto start = Clock::now();
  CHECK_FALSE(cat.read_line(Clock::now() + std::chrono::milliseconds(200)));
  CHECK(cat.timed_out());
  CHECK(seconds(Clock::now() - start) < 2.0);
  cat.close_stdin();
  const auto status = cat.wait(Clock::now() + std::chrono::seconds(5));
  REQUIRE(status);
  CHECK(WIFEXITED(*status));

  CHECK_THROWS_AS(Subprocess({"/nonexistent/worker-binary"}), std::system_error);
}

// ---------------------------------------------------------------------------
// run_single

TEST_CASE("builtin worker transpiles ghz(4) onto linear(4)") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  Worker worker(qbench::testing::cli_builtin_worker());
  Skipfile skip(config.skip_file);
  const auto test = qbench::testing::transpile_test("abstract-linear/fixture/ghz4",
                                                   qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4);
  const auto rec = run_single(test, worker, config, skip);
  INFO(rec.detail);
  REQUIRE(rec.status == TestStatus::Passed);
  REQUIRE(rec.metrics);
  CHECK(rec.timeout_s == 30.0);
  CHECK(rec.metrics->num_qubits == 4);
  CHECK(rec.metrics->two_q_gates == 3);
  CHECK(rec.metrics->two_q_depth == 3);
  CHECK(rec.metrics->wall_time_s >= 0.0);
  REQUIRE(rec.metrics->qasm_load_time_s);
  CHECK_FALSE(rec.metrics->estimated_execution_s);

  // The artifact left in the scratch directory passes validation and matches
  // metrics recomputed by the independent DAG oracle.
  const auto artifact = qasm::load_qasm_file(config.scratch_dir / "abstract-linear.fixture.ghz4" / "artifact.qasm").circuit;
  CHECK(verify::validate_structure(artifact, topology::linear(4), transpiler::default_basis()).ok());
  std::size_t two_q = 0;
  for (const auto& ins : artifact.instructions()) two_q += ins.qubits.size() == 2;
  CHECK(rec.metrics->two_q_gates == two_q);
  CHECK(rec.metrics->two_q_depth == qbench::testing::oracle_two_qubit_depth(artifact));
  CHECK(rec.metrics->op_counts == circuit::op_counts(artifact));
}

TEST_CASE("construct request for qv(10) passes with positive wall time") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  Worker worker(qbench::testing::cli_builtin_worker());
  Skipfile skip(config.skip_file);
  const auto rec = run_single(
      qbench::testing::construct_test("construct/fixture/qv10", qbench::testing::generator_input("qv", {{"n", 10}, {"depth", 10}, {"seed", 1}})),
      worker, config, skip);
  INFO(rec.detail);
  REQUIRE(rec.status == TestStatus::Passed);
  CHECK(rec.metrics->wall_time_s > 0.0);
  CHECK(rec.metrics->num_qubits == 10);
  CHECK(rec.metrics->two_q_gates == circuit::two_qubit_gate_count(generators::gen_qv(10, 10, 1)));
  CHECK_FALSE(rec.metrics->qasm_load_time_s);
}

TEST_CASE("device tests carry an execution estimate") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  Worker worker(qbench::testing::cli_builtin_worker());
  Skipfile skip(config.skip_file);
  const auto test = qbench::testing::transpile_test(
      "device/fixture/ghz5", qbench::testing::generator_input("ghz", {{"n", 5}}), topology::TopologySpec::device(config.device_file));
  const auto rec = run_single(test, worker, config, skip);
  INFO(rec.detail);
  REQUIRE(rec.status == TestStatus::Passed);
  REQUIRE(rec.metrics->estimated_execution_s);
  const auto device = topology::load_device(config.device_file);
  const auto artifact = qasm::load_qasm_file(config.scratch_dir / "device.fixture.ghz5" / "artifact.qasm").circuit;
  const double duration = transpiler::schedule_duration(artifact, device.gate_durations);
  CHECK(*rec.metrics->estimated_execution_s == Catch::Approx(4096 * (duration + 2.5e-4)).epsilon(1e-12));
}

TEST_CASE("builtin worker answers unknown kinds with an error") {
  wire::RunTest r;
  r.test_id = "x/y/z";
  r.kind = "teleport";
  const auto reply = handle_request(r);
  REQUIRE(reply.type == wire::MessageType::Error);
  CHECK(wire::as_error(reply).test_id == "x/y/z");

  r.kind = "transpile_abstract";
  CHECK(handle_request(r).type == wire::MessageType::Error);

  std::istringstream in("garbage\n" + wire::wire_encode(wire::to_message(r)) + "\n");
  std::ostringstream out;
  CHECK(serve_builtin_worker(in, out) == 0);
  std::istringstream lines(out.str());
  std::vector<wire::WireMessage> replies;
  for (std::string line; std::getline(lines, line);) replies.push_back(wire::wire_decode(line));
  REQUIRE(replies.size() == 3);
  CHECK(replies[0].type == wire::MessageType::Hello);
  CHECK(wire::as_hello(replies[0]).capabilities.size() == 4);
  CHECK(replies[1].type == wire::MessageType::Error);
  CHECK(replies[2].type == wire::MessageType::Error);
}

TEST_CASE("timeout marks FAILED, fills the skipfile and later skips without spawning") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir, 1.0);
  const auto marker = dir / "spawns.txt";
  const auto child_pid_file = dir / "child.pid";
  const auto test = qbench::testing::transpile_test("abstract-linear/fixture/slow",
                                                   qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4);
  {
    Worker worker(qbench::testing::stub_worker({"--mode", "sleep", "--sleep", "5", "--marker", marker.string(),
                                                "--child-pid-file", child_pid_file.string()}));
    Skipfile skip(config.skip_file);
    worker.hello(config.timeout_s);
    const auto spawns_before = qbench::testing::count_lines(marker);
    const auto start = std::chrono::steady_clock::now();
    const auto rec = run_single(test, worker, config, skip);
    const double elapsed = seconds(std::chrono::steady_clock::now() - start);
    CHECK(rec.status == TestStatus::Failed);
    CHECK(rec.detail.find("timed out") != std::string::npos);
    CHECK_FALSE(rec.metrics);
    CHECK(elapsed < 2.0);
    CHECK(qbench::testing::count_lines(marker) == spawns_before + 1);
    CHECK(Skipfile(config.skip_file).contains(test.test_id));
    const auto line = qbench::testing::read_file(config.skip_file);
    CHECK(line.find("host=") != std::string::npos);
    CHECK(line.find("timeout=1s") != std::string::npos);

    // The worker's own child was in the killed process group.
    const pid_t child = std::stoi(qbench::testing::read_file(child_pid_file));
    for (int i = 0; i < 100 && !qbench::testing::process_dead(child); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    CHECK(qbench::testing::process_dead(child));
  }
  const auto spawns = qbench::testing::count_lines(marker);
  Worker fresh(qbench::testing::stub_worker({"--mode", "sleep", "--sleep", "5", "--marker", marker.string()}));
  Skipfile reloaded(config.skip_file);
  const auto again = run_single(test, fresh, config, reloaded);
  CHECK(again.status == TestStatus::Skipped);
  CHECK(again.detail.find("skipfile") != std::string::npos);
  CHECK(qbench::testing::count_lines(marker) == spawns);
  CHECK_FALSE(fresh.probed());
}

TEST_CASE("status precedence") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  const auto marker = dir / "spawns.txt";
  Skipfile skip(config.skip_file);
  auto transpile = qbench::testing::transpile_test("abstract-linear/fixture/t", qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4);
  auto construct = qbench::testing::construct_test("construct/fixture/c", qbench::testing::generator_input("ghz", {{"n", 4}}));

  SECTION("expected fail wins over everything and never spawns") {
    Worker worker(qbench::testing::stub_worker({"--marker", marker.string()}));
    transpile.expected_fail = true;
    skip.add(transpile.test_id, "h", 1);
    CHECK(run_single(transpile, worker, config, skip).status == TestStatus::XFail);
    CHECK(qbench::testing::count_lines(marker) == 0);
  }
  SECTION("skipfile wins over capability") {
    Worker worker(qbench::testing::stub_worker({"--marker", marker.string(), "--capabilities", "construct"}));
    skip.add(transpile.test_id, "h", 1);
    const auto rec = run_single(transpile, worker, config, skip);
    CHECK(rec.status == TestStatus::Skipped);
    CHECK(rec.detail.find("skipfile") != std::string::npos);
    CHECK(qbench::testing::count_lines(marker) == 0);
  }
  SECTION("missing capability skips only that kind") {
    Worker worker(qbench::testing::stub_worker({"--marker", marker.string(), "--capabilities", "construct"}));
    const auto t = run_single(transpile, worker, config, skip);
    CHECK(t.status == TestStatus::Skipped);
    CHECK(t.detail.find("capability transpile_abstract") != std::string::npos);
    CHECK(run_single(construct, worker, config, skip).status == TestStatus::Passed);
    // One probe plus one construct run.
    CHECK(qbench::testing::count_lines(marker) == 2);
  }
  SECTION("circuit wider than the device is skipped before spawning") {
    Worker worker(qbench::testing::stub_worker({"--marker", marker.string()}));
    worker.hello(config.timeout_s);
    InputDescriptor wide;
    wide.path = fs::path(QBENCH_DATA_DIR) / "qasm" / "device" / "ghz_433.qasm";
    const auto t = qbench::testing::transpile_test("device/fixture/wide", wide, topology::TopologySpec::device(config.device_file));
    const auto rec = run_single(t, worker, config, skip);
    CHECK(rec.status == TestStatus::Skipped);
    CHECK(rec.detail.find("433") != std::string::npos);
    CHECK(qbench::testing::count_lines(marker) == 1);
  }
  SECTION("sized targets that are too small are skipped") {
    Worker worker(qbench::testing::stub_worker({}));
    const auto t = qbench::testing::transpile_test("abstract-linear/fixture/small", qbench::testing::generator_input("ghz", {{"n", 6}}), kLinear4);
    CHECK(run_single(t, worker, config, skip).status == TestStatus::Skipped);
  }
}

TEST_CASE("worker failures are FAILED records") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir, 2.0);
  const auto test = qbench::testing::transpile_test("abstract-linear/fixture/f", qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4);
  const std::pair<const char*, const char*> cases[] = {
      {"error", "stub failure"},
      {"crash", "no reply"},
      {"garbage", "no reply"},
      {"wrong-id", "echoes"},
      {"not-ok", "reported failure"},
      {"bad-artifact", "artifact unreadable"},
      {"invalid-artifact", "fails validation"},
      {"nohello-exit", "probe failed"},
  };
  for (const auto& [mode, fragment] : cases) {
    INFO(mode);
    Worker worker(qbench::testing::stub_worker({"--mode", mode}));
    Skipfile skip(config.skip_file);
    const auto rec = run_single(test, worker, config, skip);
    CHECK(rec.status == TestStatus::Failed);
    CHECK(rec.detail.find(fragment) != std::string::npos);
    CHECK_FALSE(rec.metrics);
  }
  CHECK_FALSE(Skipfile(config.skip_file).contains(test.test_id));

  Worker missing(qbench::testing::stub_worker({}));
  WorkerConfig bad{"bad", {"/nonexistent/worker"}, {}};
  Worker absent(bad);
  Skipfile skip(config.skip_file);
  const auto rec = run_single(test, absent, config, skip);
  CHECK(rec.status == TestStatus::Failed);
  CHECK(rec.detail.find("probe failed") != std::string::npos);
}

TEST_CASE("a worker that never says hello times out") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir, 1.0);
  Worker worker(qbench::testing::stub_worker({}));
  worker.hello(config.timeout_s);
  // Swap the command after probing so the test run itself hangs before hello.
  const auto test = qbench::testing::transpile_test("abstract-linear/fixture/h", qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4);
  Worker silent(qbench::testing::stub_worker({"--mode", "nohello"}));
  Skipfile skip(config.skip_file);
  const auto start = std::chrono::steady_clock::now();
  const auto rec = run_single(test, silent, config, skip);
  CHECK(rec.status == TestStatus::Failed);
  CHECK(seconds(std::chrono::steady_clock::now() - start) < 2.5);
}

TEST_CASE("worker-reported metrics are ignored") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  const auto test = qbench::testing::transpile_test("abstract-linear/fixture/qv", qbench::testing::generator_input("qv", {{"n", 4}, {"seed", 2}}), kLinear4);
  Worker honest(qbench::testing::stub_worker({"--mode", "pass"}));
  Worker tamper(qbench::testing::stub_worker({"--mode", "tamper"}));
  Skipfile skip(config.skip_file);
  const auto a = run_single(test, honest, config, skip);
  const auto b = run_single(test, tamper, config, skip);
  REQUIRE(a.status == TestStatus::Passed);
  REQUIRE(b.status == TestStatus::Passed);
  CHECK(b.metrics->two_q_gates > 0);
  CHECK(a.metrics->two_q_gates == b.metrics->two_q_gates);
  CHECK(a.metrics->two_q_depth == b.metrics->two_q_depth);
  CHECK(a.metrics->op_counts == b.metrics->op_counts);
  CHECK(a.metrics->num_qubits == b.metrics->num_qubits);
}

// ---------------------------------------------------------------------------
// run_suite and result documents

namespace {

json strip_volatile(const json& doc) {
  json d = doc;
  d.erase("run_id");
  d.erase("timestamp");
  for (auto& r : d.at("records")) {
    if (r.at("metrics").is_object()) {
      r["metrics"].erase("wall_time_s");
      r["metrics"].erase("qasm_load_time_s");
    }
  }
  return d;
}

}  // namespace

TEST_CASE("run_suite partitions statuses and writes a result document") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  std::vector<WorkoutDef> tests;
  for (int n = 2; n <= 11; ++n) {
    tests.push_back(qbench::testing::construct_test("construct/fixture/ghz" + std::to_string(n),
                                                    qbench::testing::generator_input("ghz", {{"n", n}})));
  }
  tests.push_back(qbench::testing::transpile_test("abstract-linear/fixture/t", qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4));
  tests.back().expected_fail = true;
  tests.push_back(qbench::testing::transpile_test("abstract-linear/fixture/u", qbench::testing::generator_input("ghz", {{"n", 4}}), kLinear4));

  Worker worker(qbench::testing::stub_worker({"--capabilities", "construct"}));
  std::size_t calls = 0;
  const auto result = run_suite(tests, worker, config, [&](std::size_t i, std::size_t n, const TestRecord& r) {
    CHECK(i == calls++);
    CHECK(n == tests.size());
    CHECK(r.test_id == tests[i].test_id);
  });
  CHECK(calls == tests.size());
  const auto counts = count_statuses(result.records);
  CHECK(counts == StatusCounts{10, 1, 0, 1});
  CHECK(counts.total() == tests.size());
  CHECK(result.environment.versions.at("worker") == "stub");
  CHECK(result.environment.versions.at("worker_version") == "0.0");
  CHECK(result.environment.versions.at("qbench") == QBENCH_VERSION);
  CHECK_FALSE(result.environment.hostname.empty());
  CHECK(result.environment.memory_bytes > 0);

  const auto doc = result_to_json(result);
  for (const char* key : {"run_id", "timestamp", "environment", "config", "records", "summary"}) CHECK(doc.contains(key));
  CHECK(doc.at("summary").at("PASSED") == 10);
  CHECK(doc.at("summary").at("total") == 12);
  const auto& rec = doc.at("records").at(0);
  std::vector<std::string> keys;
  for (const auto& [k, v] : rec.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"test_id", "status", "timeout_s", "metrics", "detail"});
  std::vector<std::string> metric_keys;
  for (const auto& [k, v] : rec.at("metrics").items()) metric_keys.push_back(k);
  CHECK(metric_keys == std::vector<std::string>{"two_q_gates", "two_q_depth", "wall_time_s", "qasm_load_time_s",
                                                "num_qubits", "op_counts", "estimated_execution_s"});

  const auto path = dir / "out" / "result.json";
  write_result(result, path);
  const auto loaded = load_result(path);
  CHECK(loaded.run_id == result.run_id);
  REQUIRE(loaded.records.size() == result.records.size());
  for (std::size_t i = 0; i < loaded.records.size(); ++i) {
    CHECK(loaded.records[i].test_id == result.records[i].test_id);
    CHECK(loaded.records[i].status == result.records[i].status);
    CHECK(loaded.records[i].detail == result.records[i].detail);
    CHECK(loaded.records[i].metrics.has_value() == result.records[i].metrics.has_value());
    if (loaded.records[i].metrics) {
      CHECK(loaded.records[i].metrics->wall_time_s == result.records[i].metrics->wall_time_s);
      CHECK(loaded.records[i].metrics->op_counts == result.records[i].metrics->op_counts);
    }
  }
  CHECK(result_to_json(loaded).dump() == doc.dump());

  // A second run differs only in timestamps and timings.
  Worker again(qbench::testing::stub_worker({"--capabilities", "construct"}));
  const auto second = run_suite(tests, again, config);
  CHECK(strip_volatile(json::parse(result_to_json(second).dump())) == strip_volatile(json::parse(doc.dump())));
}

TEST_CASE("run_suite warns about masked skipfile entries") {
  TempDir dir;
  auto config = qbench::testing::test_config(dir);
  qbench::testing::write_file(config.skip_file, "construct/fixture/a  # host=x\nstale/entry\n");
  std::vector<WorkoutDef> tests{qbench::testing::construct_test("construct/fixture/a", qbench::testing::generator_input("ghz", {{"n", 2}}))};
  Worker worker(qbench::testing::stub_worker({}));
  RunResult result;
  const auto warnings = capture_warnings([&] { result = run_suite(tests, worker, config); });
  CHECK(result.records.at(0).status == TestStatus::Skipped);
  REQUIRE(warnings.size() == 2);
  CHECK(warnings[0].find("masks 1 tests") != std::string::npos);
  CHECK(warnings[1].find("stale/entry") != std::string::npos);
}

TEST_CASE("result documents are validated on load") {
  CHECK_THROWS_AS(result_from_json(json{{"records", json::array()}}), ReportError);
  const json passed_without_metrics{
      {"run_id", "r"}, {"records", {{{"test_id", "a"}, {"status", "PASSED"}, {"metrics", nullptr}}}}};
  CHECK_THROWS_AS(result_from_json(passed_without_metrics), ReportError);
  const json bad_status{{"run_id", "r"}, {"records", {{{"test_id", "a"}, {"status", "MAYBE"}}}}};
  CHECK_THROWS_AS(result_from_json(bad_status), ReportError);
  CHECK_THROWS_AS(load_result("/nonexistent/result.json"), ReportError);
  CHECK(parse_status("XFAIL") == TestStatus::XFail);
  CHECK_FALSE(parse_status("passed"));
}
