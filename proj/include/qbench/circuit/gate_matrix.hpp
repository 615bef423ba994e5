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

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "qbench/circuit/circuit.hpp"

namespace qbench::circuit {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix.
using Matrix2 = std::array<Complex, 4>;

/// Dense row-major square matrix over the instruction's own qubits. Local
/// basis index bit k is the state of qubits[k] (little-endian), so for a
/// controlled gate the control is bit 0.
struct GateMatrix {
  std::size_t num_qubits = 0;
  std::vector<Complex> data;

  std::size_t dim() const noexcept { return std::size_t{1} << num_qubits; }
  Complex operator()(std::size_t row, std::size_t col) const { return data[row * dim() + col]; }
};

Matrix2 matrix_1q(GateId id, std::span<const double> params = {});

/// Matrix of a unitary instruction with bound parameters. Throws
/// SimulationError for directives or gates without a known matrix.
GateMatrix gate_matrix(const Instruction& instruction);
GateMatrix gate_matrix(GateId id, std::span<const double> params = {});

Matrix2 multiply(const Matrix2& a, const Matrix2& b);

/// u3(theta, phi, lambda) as defined by qelib1.
Matrix2 u3_matrix(double theta, double phi, double lambda);

std::vector<double> bound_values(const Instruction& instruction);

}  // namespace qbench::circuit
