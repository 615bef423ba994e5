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

#include <numbers>

#include "qbench/circuit/binding.hpp"
#include "qbench/error.hpp"
#include "qbench/generators/generators.hpp"
#include "qbench/generators/rng.hpp"

namespace qbench::generators {

using circuit::Circuit;
using circuit::GateId;
using circuit::ParameterExpr;
using circuit::Qubit;

namespace {

constexpr double kPi = std::numbers::pi;

void random_u3(Circuit& c, Qubit q, Rng& rng) {
  const double theta = rng.uniform(0.0, kPi);
  const double phi = rng.uniform(0.0, 2 * kPi);
  const double lambda = rng.uniform(0.0, 2 * kPi);
  c.add(GateId::U3, {q}, {theta, phi, lambda});
}

void toffoli(Circuit& c, Qubit a, Qubit b, Qubit t) {
  c.add(GateId::H, {t});
  c.add(GateId::CX, {b, t});
  c.add(GateId::Tdg, {t});
  c.add(GateId::CX, {a, t});
  c.add(GateId::T, {t});
  c.add(GateId::CX, {b, t});
  c.add(GateId::Tdg, {t});
  c.add(GateId::CX, {a, t});
  c.add(GateId::T, {b});
  c.add(GateId::T, {t});
  c.add(GateId::H, {t});
  c.add(GateId::CX, {a, b});
  c.add(GateId::T, {a});
  c.add(GateId::Tdg, {b});
  c.add(GateId::CX, {a, b});
}

Qubit q32(std::size_t i) { return static_cast<Qubit>(i); }

}  // namespace

Circuit gen_qv(std::size_t n, std::size_t layers, std::uint64_t seed) {
  if (n < 2) throw GeneratorError("gen_qv needs n >= 2");
  Rng rng(seed);
  Circuit c(n);
  std::vector<Qubit> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = q32(i);
  for (std::size_t layer = 0; layer < layers; ++layer) {
    rng.shuffle(perm);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
      const Qubit a = perm[k];
      const Qubit b = perm[k + 1];
      random_u3(c, a, rng);
      random_u3(c, b, rng);
      c.add(GateId::CX, {a, b});
      c.add(GateId::RZ, {a}, {rng.uniform(0.0, 2 * kPi)});
      c.add(GateId::RY, {b}, {rng.uniform(0.0, 2 * kPi)});
      c.add(GateId::CX, {b, a});
      c.add(GateId::RY, {b}, {rng.uniform(0.0, 2 * kPi)});
      c.add(GateId::CX, {a, b});
      random_u3(c, a, rng);
      random_u3(c, b, rng);
    }
  }
  c.set_metadata("family", "qv");
  c.set_metadata("seed", std::to_string(seed));
  return c;
}

Circuit gen_bv(const std::string& secret, bool measure) {
  if (secret.empty()) throw GeneratorError("gen_bv needs a nonempty secret");
  for (char ch : secret) {
    if (ch != '0' && ch != '1') throw GeneratorError("gen_bv secret must be a bitstring, got '" + secret + "'");
  }
  const std::size_t n = secret.size();
  const Qubit ancilla = q32(n);
  Circuit c(n + 1);
  c.add(GateId::X, {ancilla});
  for (std::size_t i = 0; i <= n; ++i) c.add(GateId::H, {q32(i)});
  for (std::size_t i = 0; i < n; ++i) {
    if (secret[n - 1 - i] == '1') c.add(GateId::CX, {q32(i), ancilla});
  }
  for (std::size_t i = 0; i < n; ++i) c.add(GateId::H, {q32(i)});
  if (measure) {
    c.add_creg("c", n);
    for (std::size_t i = 0; i < n; ++i) c.measure(q32(i), q32(i));
  }
  c.set_metadata("family", "bv");
  return c;
}

Circuit gen_ghz(std::size_t n) {
  if (n < 1) throw GeneratorError("gen_ghz needs n >= 1");
  Circuit c(n);
  c.add(GateId::H, {0});
  for (std::size_t i = 0; i + 1 < n; ++i) c.add(GateId::CX, {q32(i), q32(i + 1)});
  c.set_metadata("family", "ghz");
  return c;
}

Circuit gen_clifford_layers(std::size_t n, std::size_t depth, std::uint64_t seed) {
  if (n < 1) throw GeneratorError("gen_clifford_layers needs n >= 1");
  static constexpr GateId kChoices[] = {GateId::H, GateId::S, GateId::Sdg, GateId::X, GateId::Z};
  Rng rng(seed);
  Circuit c(n);
  std::vector<Qubit> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = q32(i);
  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (std::size_t q = 0; q < n; ++q) c.add(kChoices[rng.below(std::size(kChoices))], {q32(q)});
    rng.shuffle(perm);
    for (std::size_t k = 0; k + 1 < n; k += 2) c.add(GateId::CX, {perm[k], perm[k + 1]});
  }
  c.set_metadata("family", "clifford");
  c.set_metadata("seed", std::to_string(seed));
  return c;
}

Circuit gen_efficient_su2(std::size_t n, std::size_t reps, std::uint64_t seed) {
  if (n < 2) throw GeneratorError("gen_efficient_su2 needs n >= 2");
  Circuit c(n);
  std::size_t next = 0;
  auto rotations = [&] {
    for (std::size_t q = 0; q < n; ++q) c.add(GateId::RY, {q32(q)}, {ParameterExpr::symbol("t" + std::to_string(next++))});
    for (std::size_t q = 0; q < n; ++q) c.add(GateId::RZ, {q32(q)}, {ParameterExpr::symbol("t" + std::to_string(next++))});
  };
  rotations();
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t q = 0; q < n; ++q) c.add(GateId::CX, {q32(q), q32((q + 1) % n)});
    rotations();
  }
  c.set_metadata("family", "efficient_su2");
  c.set_metadata("seed", std::to_string(seed));
  return c;
}

circuit::Assignment random_binding(const Circuit& c, std::uint64_t seed) {
  Rng rng(seed);
  circuit::Assignment values;
  for (const auto& name : circuit::free_symbols(c)) values[name] = rng.uniform(0.0, 2 * kPi);
  return values;
}

Circuit gen_dtc(std::size_t n, std::size_t steps, std::uint64_t seed) {
  if (n < 2) throw GeneratorError("gen_dtc needs n >= 2");
  constexpr double g = 0.95;
  Rng rng(seed);
  std::vector<double> phi(n - 1), h(n);
  for (auto& v : phi) v = rng.uniform(-1.5 * kPi, -0.5 * kPi);
  for (auto& v : h) v = rng.uniform(-kPi, kPi);
  Circuit c(n);
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t q = 0; q < n; ++q) c.add(GateId::RX, {q32(q)}, {g * kPi});
    for (std::size_t j = 0; j + 1 < n; ++j) {
      c.add(GateId::CX, {q32(j), q32(j + 1)});
      c.add(GateId::RZ, {q32(j + 1)}, {phi[j]});
      c.add(GateId::CX, {q32(j), q32(j + 1)});
    }
    for (std::size_t q = 0; q < n; ++q) c.add(GateId::RZ, {q32(q)}, {h[q]});
  }
  c.set_metadata("family", "dtc");
  c.set_metadata("seed", std::to_string(seed));
  return c;
}

Circuit gen_trotter(const Hamiltonian& h, double theta_scale, std::size_t reps) {
  if (h.num_qubits == 0) throw GeneratorError("Hamiltonian '" + h.name + "' has no qubits");
  for (const auto& term : h.terms) {
    if (term.pauli.size() != h.num_qubits) {
      throw GeneratorError("term '" + term.pauli + "' does not match " + std::to_string(h.num_qubits) + " qubits");
    }
    if (term.pauli.find_first_not_of('I') == std::string::npos) {
      throw GeneratorError("identity term in Hamiltonian '" + h.name + "' cannot be evolved");
    }
  }
  Circuit c(h.num_qubits);
  for (std::size_t r = 0; r < reps; ++r) {
    for (const auto& term : h.terms) {
      std::vector<Qubit> support;
      for (std::size_t q = 0; q < term.pauli.size(); ++q) {
        const char p = term.pauli[q];
        if (p == 'I') continue;
        if (p != 'X' && p != 'Y' && p != 'Z') throw GeneratorError("invalid Pauli letter in '" + term.pauli + "'");
        support.push_back(q32(q));
      }
      for (auto q : support) {
        if (term.pauli[q] == 'X') c.add(GateId::H, {q});
        if (term.pauli[q] == 'Y') {
          c.add(GateId::Sdg, {q});
          c.add(GateId::H, {q});
        }
      }
      for (std::size_t k = 0; k + 1 < support.size(); ++k) c.add(GateId::CX, {support[k], support[k + 1]});
      c.add(GateId::RZ, {support.back()}, {2.0 * term.coefficient * theta_scale});
      for (std::size_t k = support.size() - 1; k > 0; --k) c.add(GateId::CX, {support[k - 1], support[k]});
      for (auto q : support) {
        if (term.pauli[q] == 'X') c.add(GateId::H, {q});
        if (term.pauli[q] == 'Y') {
          c.add(GateId::H, {q});
          c.add(GateId::S, {q});
        }
      }
    }
  }
  c.set_metadata("family", "trotter");
  c.set_metadata("hamiltonian", h.name);
  return c;
}

Circuit decompose_mcx(std::size_t num_controls) {
  if (num_controls < 1) throw GeneratorError("decompose_mcx needs at least one control");
  const std::size_t c_count = num_controls;
  const Qubit target = q32(c_count);
  const std::size_t ancillas = c_count >= 3 ? c_count - 2 : 0;
  Circuit c(c_count + 1 + ancillas);
  if (c_count == 1) {
    c.add(GateId::CX, {0, target});
  } else if (c_count == 2) {
    toffoli(c, 0, 1, target);
  } else {
    auto anc = [&](std::size_t k) { return q32(c_count + 1 + k); };
    // Compute the AND of controls 0..k+1 into ancilla k, then uncompute.
    toffoli(c, 0, 1, anc(0));
    for (std::size_t k = 1; k < ancillas; ++k) toffoli(c, q32(k + 1), anc(k - 1), anc(k));
    toffoli(c, q32(c_count - 1), anc(ancillas - 1), target);
    for (std::size_t k = ancillas - 1; k >= 1; --k) toffoli(c, q32(k + 1), anc(k - 1), anc(k));
    toffoli(c, 0, 1, anc(0));
  }
  c.set_metadata("family", "mcx");
  c.set_metadata("num_controls", std::to_string(num_controls));
  return c;
}

}  // namespace qbench::generators
