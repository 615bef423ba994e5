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

#include <cstdint>
#include <string>

#include "qbench/circuit/circuit.hpp"
#include "qbench/generators/hamiltonian.hpp"

namespace qbench::generators {

/// Quantum-volume style circuit: per layer a random qubit permutation and
/// floor(n/2) random two-qubit blocks, each built from 3 cx and random u3/ry/rz.
circuit::Circuit gen_qv(std::size_t n, std::size_t layers, std::uint64_t seed);

/// Bernstein-Vazirani over secret.size() data qubits plus one ancilla (the last
/// qubit). Data qubit i carries secret[size-1-i], so reading the data register
/// as a binary number gives the secret. With `measure`, data qubits are
/// measured into creg c.
circuit::Circuit gen_bv(const std::string& secret, bool measure = false);

circuit::Circuit gen_ghz(std::size_t n);

/// `depth` layers of one random gate from {h, s, sdg, x, z} per qubit followed
/// by cx on a random perfect matching (one qubit idles when n is odd).
circuit::Circuit gen_clifford_layers(std::size_t n, std::size_t depth, std::uint64_t seed);

/// Parameterized ansatz: reps+1 layers of ry then rz on every qubit, symbols
/// t0, t1, ... in gate order, separated by circular cx(i, (i+1) % n) layers.
/// The seed is kept in metadata for random_binding.
circuit::Circuit gen_efficient_su2(std::size_t n, std::size_t reps, std::uint64_t seed);

/// Values in [0, 2pi) for every free symbol, drawn in sorted symbol order.
circuit::Assignment random_binding(const circuit::Circuit& circuit, std::uint64_t seed);

/// Disordered kicked Ising chain: each step applies rx(0.95 pi) to all qubits,
/// cx rz(phi_j) cx on every bond and rz(h_i) on every qubit. phi_j in
/// [-1.5pi, -0.5pi] and h_i in [-pi, pi] are drawn once per seed.
circuit::Circuit gen_dtc(std::size_t n, std::size_t steps, std::uint64_t seed);

/// First-order Trotter circuit for exp(-i theta_scale H), repeated `reps`
/// times with the terms in file order.
circuit::Circuit gen_trotter(const Hamiltonian& h, double theta_scale, std::size_t reps = 1);

/// Multi-controlled X: controls 0..c-1, target c, then c-2 ancillas (for c >= 3)
/// that start and end in |0>. Toffolis use the 6-cx qelib1 template.
circuit::Circuit decompose_mcx(std::size_t num_controls);

/// Dresses every cx and cz with a random Pauli pair before it and the
/// compensating pair after it. Other 2Q gates raise GeneratorError.
circuit::Circuit pauli_twirl(const circuit::Circuit& circuit, std::uint64_t seed);

enum class PauliOp : std::uint8_t { I, X, Y, Z };

/// For `gate` (cx or cz) and the pre-pair (a on qubits[0], b on qubits[1]),
/// the pair (c, d) with (c x d) g (a x b) = g up to global phase.
std::pair<PauliOp, PauliOp> twirl_partner(circuit::GateId gate, PauliOp a, PauliOp b);

}  // namespace qbench::generators
