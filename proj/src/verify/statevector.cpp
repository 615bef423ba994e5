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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "qbench/error.hpp"
#include "qbench/verify/kernels.hpp"
#include "qbench/verify/verify.hpp"

namespace qbench::verify {

using circuit::Complex;
using circuit::GateId;
using circuit::Instruction;

namespace {

void check_width(std::size_t width, std::size_t cap) {
  if (width > cap) {
    throw SimulationError("statevector width " + std::to_string(width) + " exceeds the cap of " + std::to_string(cap));
  }
}

void apply(Amplitudes& state, const Instruction& ins, Kernel kernel) {
  if (ins.gate.id == GateId::Barrier) return;
  if (ins.condition) throw SimulationError("statevector cannot apply classically conditioned '" + ins.gate.name + "'");
  if (ins.gate.id == GateId::Measure || ins.gate.id == GateId::Reset) {
    throw SimulationError("statevector cannot apply non-unitary '" + ins.gate.name + "'");
  }
  if (!circuit::has_matrix(ins.gate.id)) throw SimulationError("no matrix for gate '" + ins.gate.name + "'");
  const bool parallel = kernel == Kernel::Parallel;
  if (ins.arity() == 1) {
    const auto u = circuit::matrix_1q(ins.gate.id, circuit::bound_values(ins));
    parallel ? kernels::apply_1q_parallel(state, u, ins.qubits[0]) : kernels::apply_1q_serial(state, u, ins.qubits[0]);
    return;
  }
  const auto g = circuit::gate_matrix(ins);
  if (ins.arity() == 2) {
    parallel ? kernels::apply_2q_parallel(state, g, ins.qubits[0], ins.qubits[1])
             : kernels::apply_2q_serial(state, g, ins.qubits[0], ins.qubits[1]);
    return;
  }
  parallel ? kernels::apply_dense_parallel(state, g, ins.qubits) : kernels::apply_dense_serial(state, g, ins.qubits);
}

// Removes measurements that nothing follows on their qubit or bit. Returns
// (qubit, clbit) pairs of the removed measurements.
std::pair<Circuit, std::multiset<std::pair<std::size_t, std::size_t>>> strip_terminal_measurements(const Circuit& c) {
  const auto& ins = c.instructions();
  std::vector<bool> qubit_used_later(c.num_qubits(), false);
  std::vector<bool> drop(ins.size(), false);
  bool classical_read_later = false;
  for (std::size_t k = ins.size(); k-- > 0;) {
    const auto& i = ins[k];
    if (i.gate.id == GateId::Measure && !i.condition && !qubit_used_later[i.qubits[0]] && !classical_read_later) {
      drop[k] = true;
      continue;
    }
    if (i.condition) classical_read_later = true;
    if (i.gate.id == GateId::Barrier) continue;
    for (auto q : i.qubits) qubit_used_later[q] = true;
  }
  Circuit out = c.empty_like();
  std::multiset<std::pair<std::size_t, std::size_t>> measured;
  for (std::size_t k = 0; k < ins.size(); ++k) {
    if (drop[k]) {
      measured.emplace(ins[k].qubits[0], ins[k].clbits[0]);
    } else {
      out.append(ins[k]);
    }
  }
  return {std::move(out), std::move(measured)};
}

std::size_t permute_index(std::size_t x, const std::vector<std::size_t>& perm) {
  std::size_t y = 0;
  for (std::size_t p = 0; p < perm.size(); ++p) {
    if ((x >> p) & 1U) y |= std::size_t{1} << perm[p];
  }
  return y;
}

}  // namespace

void evolve(Amplitudes& state, const Circuit& circuit, Kernel kernel) {
  if (state.size() != (std::size_t{1} << circuit.num_qubits())) {
    throw SimulationError("state has " + std::to_string(state.size()) + " amplitudes, circuit needs 2^" +
                          std::to_string(circuit.num_qubits()));
  }
  for (const auto& ins : circuit.instructions()) apply(state, ins, kernel);
}

Amplitudes statevector(const Circuit& circuit, std::size_t width_cap, Kernel kernel) {
  check_width(circuit.num_qubits(), width_cap);
  Amplitudes state(std::size_t{1} << circuit.num_qubits(), Complex(0.0));
  state[0] = 1.0;
  evolve(state, circuit, kernel);
  return state;
}

EquivalenceResult compare_circuits(const Circuit& a, const Circuit& b, const std::vector<std::size_t>& permutation,
                                   const EquivalenceOptions& options) {
  const std::size_t n = a.num_qubits();
  if (b.num_qubits() != n) {
    throw SimulationError("cannot compare circuits of width " + std::to_string(n) + " and " +
                          std::to_string(b.num_qubits()));
  }
  check_width(n, options.width_cap);
  std::vector<std::size_t> perm = permutation;
  if (perm.empty()) {
    perm.resize(n);
    for (std::size_t p = 0; p < n; ++p) perm[p] = p;
  }
  if (perm.size() != n || std::set<std::size_t>(perm.begin(), perm.end()).size() != n ||
      *std::max_element(perm.begin(), perm.end()) >= n) {
    throw SimulationError("permutation is not a bijection on " + std::to_string(n) + " qubits");
  }

  auto [ua, meas_a] = strip_terminal_measurements(a);
  auto [ub, meas_b] = strip_terminal_measurements(b);
  std::multiset<std::pair<std::size_t, std::size_t>> mapped;
  for (const auto& [q, c] : meas_a) mapped.emplace(perm[q], c);
  EquivalenceResult result;
  if (mapped != meas_b) {
    result.detail = "measurement targets differ";
    return result;
  }

  // Inputs: every basis state for small widths, random product states otherwise.
  std::vector<Amplitudes> inputs;
  const std::size_t dim = std::size_t{1} << n;
  if (n <= options.exhaustive_width) {
    for (std::size_t x = 0; x < dim; ++x) {
      Amplitudes s(dim, Complex(0.0));
      s[x] = 1.0;
      inputs.push_back(std::move(s));
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (std::size_t k = 0; k < options.random_states; ++k) {
      Amplitudes s(1, Complex(1.0));
      for (std::size_t q = 0; q < n; ++q) {
        const double theta = angle(rng) / 2, phi = angle(rng);
        const Complex c0 = std::cos(theta / 2), c1 = std::polar(std::sin(theta / 2), phi);
        Amplitudes next(s.size() * 2);
        for (std::size_t i = 0; i < s.size(); ++i) {
          next[i] = s[i] * c0;
          next[i + s.size()] = s[i] * c1;
        }
        s = std::move(next);
      }
      inputs.push_back(std::move(s));
    }
  }

  std::vector<Amplitudes> expected, actual;
  Complex overlap = 0.0;
  for (const auto& in : inputs) {
    Amplitudes sa = in;
    evolve(sa, ua);
    Amplitudes pa(dim);
    for (std::size_t x = 0; x < dim; ++x) pa[permute_index(x, perm)] = sa[x];
    Amplitudes sb = in;
    evolve(sb, ub);
    for (std::size_t x = 0; x < dim; ++x) overlap += std::conj(pa[x]) * sb[x];
    expected.push_back(std::move(pa));
    actual.push_back(std::move(sb));
  }
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (std::size_t x = 0; x < dim; ++x) worst = std::max(worst, std::abs(expected[k][x] * phase - actual[k][x]));
  }
  result.max_deviation = worst;
  result.equivalent = worst <= options.tolerance;
  if (!result.equivalent) result.detail = "max amplitude deviation " + std::to_string(worst);
  return result;
}

bool equivalent_up_to(const Circuit& a, const Circuit& b, const std::vector<std::size_t>& permutation,
                      double tolerance) {
  EquivalenceOptions options;
  options.tolerance = tolerance;
  return compare_circuits(a, b, permutation, options).equivalent;
}

CompactPair compact_routed(const Circuit& logical, const transpiler::TranspileResult& routed) {
  const std::size_t nodes = routed.circuit.num_qubits();
  const Circuit placed = transpiler::apply_layout(logical, routed.initial_layout, nodes);
  std::vector<bool> active(nodes, false);
  for (auto p : routed.initial_layout) active[p] = true;
  for (const auto* c : {&placed, &routed.circuit}) {
    for (const auto& ins : c->instructions()) {
      if (ins.gate.id == GateId::Barrier) continue;
      for (auto q : ins.qubits) active[q] = true;
    }
  }
  for (std::size_t p = 0; p < nodes; ++p) {
    if (routed.permutation.at(p) != p) active[p] = active[routed.permutation[p]] = true;
  }
  CompactPair out;
  std::vector<std::size_t> index(nodes, 0);
  for (std::size_t p = 0; p < nodes; ++p) {
    if (active[p]) {
      index[p] = out.nodes.size();
      out.nodes.push_back(p);
    }
  }
  auto shrink = [&](const Circuit& c) {
    Circuit s(out.nodes.size());
    for (const auto& r : c.cregs()) s.add_creg(r.name, r.width);
    for (auto ins : c.instructions()) {
      if (ins.gate.id == GateId::Barrier) {
        std::vector<circuit::Qubit> kept;
        for (auto q : ins.qubits) {
          if (active[q]) kept.push_back(static_cast<circuit::Qubit>(index[q]));
        }
        if (kept.empty()) continue;
        ins = circuit::make_instruction(GateId::Barrier, std::move(kept));
      } else {
        for (auto& q : ins.qubits) q = static_cast<circuit::Qubit>(index[q]);
      }
      s.append(std::move(ins));
    }
    return s;
  };
  out.logical = shrink(placed);
  out.routed = shrink(routed.circuit);
  out.permutation.resize(out.nodes.size());
  for (std::size_t k = 0; k < out.nodes.size(); ++k) out.permutation[k] = index[routed.permutation[out.nodes[k]]];
  return out;
}

}  // namespace qbench::verify
