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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qbench/circuit/metrics.hpp"
#include "qbench/error.hpp"
#include "qbench/generators/generators.hpp"
#include "qbench/generators/hamiltonian.hpp"
#include "qbench/harness/harness.hpp"
#include "qbench/harness/workout.hpp"
#include "qbench/qasm/qasm.hpp"
#include "qbench/report/report.hpp"
#include "qbench/topology/coupling_map.hpp"
#include "qbench/transpiler/transpiler.hpp"
#include "qbench/verify/verify.hpp"

using namespace qbench;
using circuit::Circuit;
using circuit::GateId;
using testing::Matrix;
using testing::Vector;
using topology::Family;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

const std::vector<Family> kAbstractFamilies{Family::AllToAll, Family::Square, Family::HeavyHex, Family::Linear};

// ------------------------------------------------------------------ 2Q depth

Verdict two_qubit_depth_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(0xd3b7);
  std::size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const auto c = testing::random_circuit(rng, 8, 60);
    if (circuit::two_qubit_depth(c) != testing::oracle_two_qubit_depth(c)) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 5.0,
          "200 circuits, " + std::to_string(mismatches) + " mismatches, " + fmt(elapsed) + " s"};
}

// ---------------------------------------------------------------- soundness

struct CorpusPair {
  std::string test_id;
  Circuit circuit;
  topology::CouplingMap coupling;
  transpiler::TranspileOptions options;
};

topology::CouplingMap coupling_for(const harness::TargetDescriptor& target, std::size_t width) {
  const auto& spec = target.topology;
  if (spec.family == Family::Device) return topology::load_device(spec.device_file).coupling;
  return target.sized ? topology::build(spec) : topology::smallest_fit(spec.family, width);
}

std::vector<harness::WorkoutDef> bundled_transpile_tests() {
  std::vector<harness::WorkoutDef> out;
  for (auto& t : harness::discover_tests(harness::RunConfig{})) {
    if (t.target) out.push_back(std::move(t));
  }
  return out;
}

Verdict transpiler_soundness() {
  const auto start = Clock::now();
  std::map<std::string, std::size_t> per_family;
  std::size_t pairs = 0, valid = 0, too_wide = 0;
  std::string first_failure;
  for (const auto& t : bundled_transpile_tests()) {
    const auto input = harness::materialize(t.input).circuit;
    topology::CouplingMap coupling;
    try {
      coupling = coupling_for(*t.target, input.num_qubits());
    } catch (const WidthExceeded&) {
      ++too_wide;
      continue;
    }
    if (input.num_qubits() > coupling.num_nodes()) {
      ++too_wide;
      continue;
    }
    transpiler::TranspileOptions options;
    options.basis = t.target->basis;
    options.opt_level = t.target->opt_level;
    ++pairs;
    ++per_family[topology::family_name(t.target->topology.family)];
    try {
      const auto r = transpiler::transpile(input, coupling, options);
      const auto report = verify::validate_structure(r.circuit, coupling, options.basis);
      if (report.ok()) {
        ++valid;
      } else if (first_failure.empty()) {
        first_failure = t.test_id + ": " + report.summary();
      }
    } catch (const std::exception& e) {
      if (first_failure.empty()) first_failure = t.test_id + ": " + e.what();
    }
  }
  const double elapsed = seconds_since(start);
  bool families_covered = per_family.count("device") > 0;
  std::string breakdown;
  for (auto f : kAbstractFamilies) families_covered = families_covered && per_family.count(topology::family_name(f)) > 0;
  for (const auto& [name, n] : per_family) breakdown += " " + name + "=" + std::to_string(n);
  std::string detail = std::to_string(valid) + "/" + std::to_string(pairs) + " valid (" + breakdown.substr(1) + "), " +
                       std::to_string(too_wide) + " wider than target, " + fmt(elapsed) + " s";
  if (!first_failure.empty()) detail += "; first failure " + first_failure;
  return {pairs >= 500 && valid == pairs && families_covered && elapsed < 120.0, detail};
}

// -------------------------------------------------------------- correctness

// Drops terminal measurements. Empty when the circuit has other non-unitary
// content.
std::optional<Circuit> unitary_part(const Circuit& c) {
  Circuit out(c.num_qubits());
  std::vector<bool> measured(c.num_qubits(), false);
  for (const auto& ins : c.instructions()) {
    if (ins.condition || ins.gate.id == GateId::Reset) return std::nullopt;
    if (ins.gate.id == GateId::Barrier) continue;
    if (ins.gate.id == GateId::Measure) {
      measured[ins.qubits[0]] = true;
      continue;
    }
    for (auto q : ins.qubits) {
      if (measured[q]) return std::nullopt;
    }
    out.append(ins);
  }
  return out;
}

// 100 circuits of at most 6 qubits drawn from the bundled corpus with a fixed
// seed, padded with seeded random circuits if the corpus is short.
std::vector<std::pair<std::string, Circuit>> small_corpus(std::size_t& from_corpus) {
  std::map<std::string, Circuit> unique;
  for (const auto& t : bundled_transpile_tests()) {
    if (t.target->topology.family == Family::Device) continue;
    const auto slash = t.test_id.find('/');
    const std::string key = t.test_id.substr(slash + 1);
    if (unique.count(key)) continue;
    const auto input = harness::materialize(t.input).circuit;
    if (input.num_qubits() > 6) continue;
    if (auto u = unitary_part(input); u && circuit::two_qubit_gate_count(transpiler::decompose_to_2q(*u)) > 0) {
      unique.emplace(key, std::move(*u));
    }
  }
  std::vector<std::pair<std::string, Circuit>> out(unique.begin(), unique.end());
  std::mt19937_64 rng(0xc0ffee);
  std::shuffle(out.begin(), out.end(), rng);
  if (out.size() > 100) out.resize(100);
  from_corpus = out.size();
  while (out.size() < 100) {
    out.emplace_back("random_" + std::to_string(out.size()), testing::random_unitary_circuit(rng, 2, 6, 30));
  }
  return out;
}

Verdict transpiler_correctness() {
  std::size_t from_corpus = 0;
  const auto corpus = small_corpus(from_corpus);
  std::size_t checked = 0, failed = 0;
  double worst = 0.0;
  std::string first_failure;
  for (auto family : kAbstractFamilies) {
    for (const auto& [name, logical] : corpus) {
      const auto map = topology::smallest_fit(family, logical.num_qubits());
      const auto r = transpiler::transpile(logical, map);
      const double dev = testing::routed_deviation(logical, r.circuit, r.initial_layout, r.permutation);
      worst = std::max(worst, dev);
      ++checked;
      if (!(dev <= 1e-9)) {
        ++failed;
        if (first_failure.empty()) first_failure = topology::family_name(family) + "/" + name;
      }
    }
  }
  std::string detail = std::to_string(checked - failed) + "/" + std::to_string(checked) + " equivalent (" +
                       std::to_string(from_corpus) + " corpus circuits per family), max deviation " + fmt(worst);
  if (!first_failure.empty()) detail += "; first failure " + first_failure;
  return {failed == 0 && checked == 400, detail};
}

// ------------------------------------------------------------------ twirling

Verdict twirling_identity() {
  const auto dtc = generators::gen_dtc(5, 3, 1);
  const Vector reference = testing::run_statevector(dtc, testing::basis_state(5, 0));
  double worst = 0.0;
  bool metrics_kept = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto twirled = generators::pauli_twirl(dtc, seed);
    worst = std::max(worst, testing::state_distance(testing::run_statevector(twirled, testing::basis_state(5, 0)), reference));
    metrics_kept = metrics_kept && circuit::two_qubit_gate_count(twirled) == circuit::two_qubit_gate_count(dtc) &&
                   circuit::two_qubit_depth(twirled) == circuit::two_qubit_depth(dtc);
  }
  std::size_t cx = 0;
  const auto big = generators::gen_dtc(100, 100, 1);
  for (const auto& ins : big.instructions()) cx += ins.gate.id == GateId::CX;
  return {worst < 1e-10 && metrics_kept && cx == 19800,
          "20 seeds, max deviation " + fmt(worst) + (metrics_kept ? ", 2Q count/depth kept" : ", 2Q metrics changed") +
              ", cx(dtc(100,100)) = " + std::to_string(cx)};
}

// ------------------------------------------------------------------- trotter

Matrix pauli_string(const std::string& p) {
  const auto n = p.size();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix m = Matrix::Identity(dim, dim);
  for (std::size_t q = 0; q < n; ++q) {
    m = testing::embed(testing::pauli(p[q]), {static_cast<circuit::Qubit>(q)}, n) * m;
  }
  return m;
}

Verdict trotter_correctness() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> letter(0, 3), qubits(1, 4), terms(1, 3);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0), scale(0.05, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    generators::Hamiltonian h{"random", generators::Category::Chemistry, static_cast<std::size_t>(qubits(rng)), {}};
    const int t = terms(rng);
    for (int k = 0; k < t; ++k) {
      std::string p(h.num_qubits, 'I');
      while (p.find_first_not_of('I') == std::string::npos) {
        for (auto& ch : p) ch = "IXYZ"[letter(rng)];
      }
      h.terms.push_back({p, coeff(rng)});
    }
    const double theta = scale(rng);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits);
    Matrix expected = Matrix::Identity(dim, dim);
    for (const auto& term : h.terms) {
      const Matrix generator = std::complex<double>(0, -term.coefficient * theta) * pauli_string(term.pauli);
      expected = generator.exp() * expected;
    }
    const auto c = generators::gen_trotter(h, theta);
    worst = std::max(worst, testing::phase_distance(testing::circuit_unitary(c), expected));
  }
  return {worst < 1e-9, "50 Hamiltonians, max deviation " + fmt(worst)};
}

// ----------------------------------------------------------------- heavy-hex

Verdict heavy_hex_counts() {
  const std::map<std::size_t, std::size_t> expected{{3, 19}, {5, 57}, {7, 115}, {9, 193}};
  bool ok = true;
  std::string detail;
  for (const auto& [d, nodes] : expected) {
    const auto map = topology::heavy_hex(d);
    const std::size_t n = map.num_nodes();
    std::vector<std::vector<std::size_t>> adj(n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [a, b] : map.edges()) {
      if (a == b || a >= n || b >= n || !seen.insert({std::min(a, b), std::max(a, b)}).second) ok = false;
      if (a < n && b < n) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
    std::size_t max_degree = 0;
    for (const auto& nb : adj) max_degree = std::max(max_degree, nb.size());
    std::vector<bool> reached(n, false);
    std::queue<std::size_t> frontier;
    std::size_t count = 0;
    if (n > 0) {
      frontier.push(0);
      reached[0] = true;
    }
    while (!frontier.empty()) {
      const auto v = frontier.front();
      frontier.pop();
      ++count;
      for (auto w : adj[v]) {
        if (!reached[w]) {
          reached[w] = true;
          frontier.push(w);
        }
      }
    }
    const bool connected = count == n;
    ok = ok && n == nodes && max_degree <= 3 && connected;
    detail += (detail.empty() ? "" : ", ") + std::string("d=") + std::to_string(d) + ": " + std::to_string(n) +
              " nodes, max degree " + std::to_string(max_degree) + (connected ? "" : ", disconnected");
  }
  return {ok, detail};
}

// ------------------------------------------------------------------- harness

Verdict timeout_and_skipfile() {
  testing::TempDir dir;
  auto config = testing::test_config(dir, 1.0);
  const auto marker = dir / "spawns.txt";
  const auto test = testing::transpile_test("abstract-linear/acceptance/slow", testing::generator_input("ghz", {{"n", 4}}),
                                            topology::TopologySpec::linear(4));
  harness::Worker worker(testing::stub_worker({"--mode", "sleep", "--sleep", "5", "--marker", marker.string()}));
  harness::Skipfile skipfile(config.skip_file);
  const auto start = Clock::now();
  const auto first = harness::run_single(test, worker, config, skipfile);
  const double elapsed = seconds_since(start);
  const bool recorded = harness::Skipfile(config.skip_file).contains(test.test_id);
  const auto spawns = testing::count_lines(marker);

  harness::Worker fresh(testing::stub_worker({"--mode", "sleep", "--sleep", "5", "--marker", marker.string()}));
  harness::Skipfile reloaded(config.skip_file);
  const auto second = harness::run_single(test, fresh, config, reloaded);
  const bool no_spawn = testing::count_lines(marker) == spawns && !fresh.probed();

  const bool ok = first.status == harness::TestStatus::Failed && elapsed < 2.0 && recorded &&
                  second.status == harness::TestStatus::Skipped && no_spawn;
  return {ok, harness::status_name(first.status) + " after " + fmt(elapsed) + " s, skipfile " +
                  (recorded ? "updated" : "not updated") + ", re-run " + harness::status_name(second.status) +
                  (no_spawn ? " without spawning" : " but the worker was spawned")};
}

Verdict width_gating() {
  testing::TempDir dir;
  const auto config = testing::test_config(dir);
  std::optional<harness::WorkoutDef> wide;
  for (const auto& t : bundled_transpile_tests()) {
    if (t.target->topology.family == Family::Device && harness::materialize(t.input).circuit.num_qubits() == 433) {
      wide = t;
      break;
    }
  }
  if (!wide) return {false, "no 433-qubit device test in the bundled corpus"};
  const auto device = topology::load_device(wide->target->topology.device_file);
  harness::Worker worker(testing::cli_builtin_worker());
  harness::Skipfile skipfile(config.skip_file);
  const auto rec = harness::run_single(*wide, worker, config, skipfile);
  return {rec.status == harness::TestStatus::Skipped && device.coupling.num_nodes() == 133,
          wide->test_id + " on " + std::to_string(device.coupling.num_nodes()) + " qubits: " +
              harness::status_name(rec.status) + " (" + rec.detail + ")"};
}

// --------------------------------------------------------------- report math

Verdict report_math() {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  using Bin = boost::multiprecision::cpp_bin_float_100;
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> exponent(-8.0, 8.0);
  std::uniform_int_distribution<int> size(1, 500);
  double worst_g = 0.0, worst_m = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(size(rng)));
    for (auto& x : v) x = std::pow(10.0, exponent(rng));
    Dec log_sum = 0;
    for (double x : v) log_sum += boost::multiprecision::log(Dec(x));
    const double g = static_cast<double>(boost::multiprecision::exp(log_sum / Dec(v.size())));
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double m = n % 2 ? sorted[n / 2] : static_cast<double>((Bin(sorted[n / 2 - 1]) + Bin(sorted[n / 2])) / 2);
    worst_g = std::max(worst_g, std::abs(report::geometric_mean(v) - g) / g);
    worst_m = std::max(worst_m, std::abs(report::median(v) - m) / m);
  }

  // Self-normalization of a real run over every family.
  testing::TempDir dir;
  const auto config = testing::test_config(dir);
  std::vector<harness::WorkoutDef> tests;
  std::map<std::string, int> taken;
  for (const auto& t : harness::discover_tests(harness::RunConfig{})) {
    const auto group = harness::topology_group(t.test_id);
    if (t.kind != harness::Kind::TranspileDevice && taken[group]++ < 6) tests.push_back(t);
  }
  harness::Worker worker(testing::cli_builtin_worker());
  const auto run = harness::run_suite(tests, worker, config);
  bool ones = true;
  std::size_t ratios = 0;
  std::vector<report::RatioSeries> series;
  for (auto metric : report::kMetrics) {
    series.push_back(report::normalize(run.records, run.records, metric));
    for (const auto& r : series.back().ratios) {
      ones = ones && r.ratio == 1.0;
      ++ratios;
    }
  }
  bool cells = true;
  for (const auto& row : report::aggregate_table(series, report::GroupBy::Topology)) {
    for (const auto& cell : row.cells) {
      cells = cells && report::format_cell(cell).rfind("1.00/1.00 (n=", 0) == 0;
    }
  }
  const bool all_passed = harness::count_statuses(run.records).passed == run.records.size();
  const bool ok = worst_g < 1e-12 && worst_m < 1e-12 && ones && cells && all_passed && ratios > 0;
  return {ok, "1000 vectors, max relative error geomean " + fmt(worst_g) + " median " + fmt(worst_m) + "; self run of " +
                  std::to_string(run.records.size()) + " tests: " + std::to_string(ratios) + " ratios" +
                  (ones ? " all exactly 1.0" : " not all 1.0") + (cells ? ", every cell 1.00/1.00" : ", cells differ")};
}

// -------------------------------------------------------------- bigint QASM

Verdict bigint_qasm() {
  const auto path = std::filesystem::path(QBENCH_DATA_DIR) / "qasm" / "abstract" / "bigint_301.qasm";
  const auto c = qasm::load_qasm_file(path).circuit;
  circuit::BigUint expected = 1;
  expected <<= 300;
  std::size_t conditions = 0;
  bool exact = false;
  for (const auto& ins : c.instructions()) {
    if (!ins.condition) continue;
    ++conditions;
    exact = ins.condition->value == expected && msb(ins.condition->value) == 300 && lsb(ins.condition->value) == 300;
  }
  const auto back = qasm::parse_qasm(qasm::emit_qasm(c));
  const bool round_trip = back == c && qasm::emit_qasm(back) == qasm::emit_qasm(c);
  return {c.num_clbits() == 301 && conditions == 1 && exact && round_trip,
          std::to_string(c.num_clbits()) + "-bit register, condition " + (exact ? "== 2^300" : "!= 2^300") +
              (round_trip ? ", round-trips" : ", round-trip differs")};
}

// ------------------------------------------------------------------ estimate

Verdict execution_estimate() {
  const auto device = topology::parse_device(
      R"({"name":"pair","num_qubits":2,"edges":[[0,1]],"gate_durations":{"x":1e-4},"rep_delay":2.5e-4})");
  Circuit c(1);
  c.add(GateId::X, {0});
  const double duration = transpiler::schedule_duration(c, device.gate_durations);
  const double estimate = transpiler::execution_time_estimate(duration, transpiler::kDefaultShots, device.rep_delay);
  const bool defaults = transpiler::kDefaultShots == 4096 && harness::RunConfig{}.shots == 4096;
  const auto bundled = topology::load_device(std::filesystem::path(QBENCH_DATA_DIR) / "devices" / "device_133.json");
  const bool ok = defaults && std::abs(estimate - 1.4336) <= 1e-12 && bundled.rep_delay == 2.5e-4;
  return {ok, "shots " + std::to_string(transpiler::kDefaultShots) + ", duration " + fmt(duration) + " s, estimate " +
                  fmt(estimate) + " s, bundled rep_delay " + fmt(bundled.rep_delay) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"2q-depth-oracle", two_qubit_depth_oracle},
      {"transpiler-soundness", transpiler_soundness},
      {"transpiler-correctness", transpiler_correctness},
      {"twirling-identity", twirling_identity},
      {"trotter-correctness", trotter_correctness},
      {"heavy-hex", heavy_hex_counts},
      {"harness-timeout-skipfile", timeout_and_skipfile},
      {"width-gating", width_gating},
      {"report-math", report_math},
      {"bigint-qasm", bigint_qasm},
      {"execution-estimate", execution_estimate},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
