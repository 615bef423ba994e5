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

#include "qbench/circuit/gate_matrix.hpp"

#include <cmath>
#include <numbers>

#include "qbench/error.hpp"

namespace qbench::circuit {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex expi(double angle) { return {std::cos(angle), std::sin(angle)}; }

double param(std::span<const double> params, std::size_t i) {
  if (i >= params.size()) throw SimulationError("missing gate parameter");
  return params[i];
}

GateMatrix identity(std::size_t num_qubits) {
  GateMatrix m{num_qubits, {}};
  m.data.assign(m.dim() * m.dim(), Complex{});
  for (std::size_t i = 0; i < m.dim(); ++i) m.data[i * m.dim() + i] = 1.0;
  return m;
}

// Control on local bit 0, target on local bit 1.
GateMatrix controlled(const Matrix2& u) {
  GateMatrix m = identity(2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) m.data[(1 + 2 * r) * 4 + (1 + 2 * c)] = u[r * 2 + c];
  }
  return m;
}

GateMatrix from_1q(const Matrix2& u) { return {1, {u.begin(), u.end()}}; }

}  // namespace

Matrix2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {c, -expi(lambda) * s, expi(phi) * s, expi(phi + lambda) * c};
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Matrix2 matrix_1q(GateId id, std::span<const double> p) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (id) {
    case GateId::Id: return {1.0, 0.0, 0.0, 1.0};
    case GateId::X: return {0.0, 1.0, 1.0, 0.0};
    case GateId::Y: return {0.0, -kI, kI, 0.0};
    case GateId::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateId::H: return {r, r, r, -r};
    case GateId::S: return {1.0, 0.0, 0.0, kI};
    case GateId::Sdg: return {1.0, 0.0, 0.0, -kI};
    case GateId::T: return {1.0, 0.0, 0.0, expi(pi / 4)};
    case GateId::Tdg: return {1.0, 0.0, 0.0, expi(-pi / 4)};
    case GateId::SX: return {Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5)};
    case GateId::SXdg: return {Complex(0.5, -0.5), Complex(0.5, 0.5), Complex(0.5, 0.5), Complex(0.5, -0.5)};
    case GateId::RX: {
      const double t = param(p, 0);
      return {std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2)};
    }
    case GateId::RY: {
      const double t = param(p, 0);
      return {std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)};
    }
    case GateId::RZ: {
      const double t = param(p, 0);
      return {expi(-t / 2), 0.0, 0.0, expi(t / 2)};
    }
    case GateId::U1: return {1.0, 0.0, 0.0, expi(param(p, 0))};
    case GateId::U2: return u3_matrix(pi / 2, param(p, 0), param(p, 1));
    case GateId::U3: return u3_matrix(param(p, 0), param(p, 1), param(p, 2));
    default: throw SimulationError("'" + standard_gate(id).name + "' is not a single-qubit gate");
  }
}

GateMatrix gate_matrix(GateId id, std::span<const double> p) {
  switch (id) {
    case GateId::CX: return controlled(matrix_1q(GateId::X));
    case GateId::CY: return controlled(matrix_1q(GateId::Y));
    case GateId::CZ: return controlled(matrix_1q(GateId::Z));
    case GateId::CH: return controlled(matrix_1q(GateId::H));
    case GateId::CRZ: return controlled(matrix_1q(GateId::RZ, p));
    case GateId::CU1: return controlled(matrix_1q(GateId::U1, p));
    case GateId::CU3: return controlled(matrix_1q(GateId::U3, p));
    case GateId::Swap: {
      GateMatrix m = identity(2);
      m.data[1 * 4 + 1] = m.data[2 * 4 + 2] = 0.0;
      m.data[1 * 4 + 2] = m.data[2 * 4 + 1] = 1.0;
      return m;
    }
    case GateId::CCX: {
      GateMatrix m = identity(3);
      m.data[3 * 8 + 3] = m.data[7 * 8 + 7] = 0.0;
      m.data[3 * 8 + 7] = m.data[7 * 8 + 3] = 1.0;
      return m;
    }
    case GateId::Measure:
    case GateId::Reset:
    case GateId::Barrier:
    case GateId::Opaque: throw SimulationError("'" + standard_gate(id).name + "' has no unitary matrix");
    default: return from_1q(matrix_1q(id, p));
  }
}

std::vector<double> bound_values(const Instruction& instruction) {
  std::vector<double> values;
  values.reserve(instruction.params.size());
  for (const auto& p : instruction.params) values.push_back(p.value());
  return values;
}

GateMatrix gate_matrix(const Instruction& instruction) {
  if (instruction.gate.id == GateId::Opaque) {
    throw SimulationError("opaque gate '" + instruction.gate.name + "' has no known matrix");
  }
  const auto values = bound_values(instruction);
  return gate_matrix(instruction.gate.id, values);
}

}  // namespace qbench::circuit
