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
#include <vector>

#include "qbench/circuit/gate_matrix.hpp"
#include "qbench/verify/verify.hpp"

/// Statevector update kernels. Each has a plain loop version kept as the
/// reference and an OpenMP version used by default.
namespace qbench::verify::kernels {

void apply_1q_serial(Amplitudes& state, const circuit::Matrix2& u, std::size_t qubit);
void apply_1q_parallel(Amplitudes& state, const circuit::Matrix2& u, std::size_t qubit);

/// Local index bit 0 is q0, bit 1 is q1.
void apply_2q_serial(Amplitudes& state, const circuit::GateMatrix& g, std::size_t q0, std::size_t q1);
void apply_2q_parallel(Amplitudes& state, const circuit::GateMatrix& g, std::size_t q0, std::size_t q1);

/// Any width; local index bit k is qubits[k].
void apply_dense_serial(Amplitudes& state, const circuit::GateMatrix& g, const std::vector<circuit::Qubit>& qubits);
void apply_dense_parallel(Amplitudes& state, const circuit::GateMatrix& g, const std::vector<circuit::Qubit>& qubits);

}  // namespace qbench::verify::kernels
