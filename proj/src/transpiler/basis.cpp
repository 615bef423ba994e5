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

#include <cmath>
#include <numbers>
#include <sstream>

#include "qbench/error.hpp"
#include "qbench/transpiler/transpiler.hpp"

namespace qbench::transpiler {

using circuit::Complex;
using circuit::GateId;
using circuit::Instruction;
using circuit::Matrix2;
using circuit::ParameterExpr;
using circuit::Qubit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

bool has(const Basis& basis, std::string_view name) { return basis.find(name) != basis.end(); }

bool always_allowed(GateId id) { return circuit::is_directive(id); }

Instruction gate(GateId id, std::vector<Qubit> qubits, std::vector<ParameterExpr> params, const Instruction& source) {
  Instruction ins = circuit::make_instruction(id, std::move(qubits), std::move(params));
  ins.condition = source.condition;
  return ins;
}

// Angle in (-pi, pi].
double wrap(double a) {
  a = std::remainder(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  return a;
}

bool negligible(double a) { return std::abs(wrap(a)) < kAngleTol; }

// 2Q gates expanded into cx and 1Q gates following their qelib1 bodies.
std::vector<Instruction> expand_to_cx(const Instruction& ins) {
  const auto a = ins.qubits[0], b = ins.qubits[1];
  const auto p = circuit::bound_values(ins);
  auto g = [&](GateId id, std::vector<Qubit> q, std::vector<ParameterExpr> params = {}) {
    return gate(id, std::move(q), std::move(params), ins);
  };
  switch (ins.gate.id) {
    case GateId::CX: return {ins};
    case GateId::CZ: return {g(GateId::H, {b}), g(GateId::CX, {a, b}), g(GateId::H, {b})};
    case GateId::CY: return {g(GateId::Sdg, {b}), g(GateId::CX, {a, b}), g(GateId::S, {b})};
    case GateId::CH:
      return {g(GateId::H, {b}), g(GateId::Sdg, {b}), g(GateId::CX, {a, b}), g(GateId::H, {b}),
              g(GateId::T, {b}), g(GateId::CX, {a, b}), g(GateId::T, {b}), g(GateId::H, {b}),
              g(GateId::S, {b}), g(GateId::X, {b}), g(GateId::S, {a})};
    case GateId::CRZ:
      return {g(GateId::U1, {b}, {p[0] / 2}), g(GateId::CX, {a, b}), g(GateId::U1, {b}, {-p[0] / 2}),
              g(GateId::CX, {a, b})};
    case GateId::CU1:
      return {g(GateId::U1, {a}, {p[0] / 2}), g(GateId::CX, {a, b}), g(GateId::U1, {b}, {-p[0] / 2}),
              g(GateId::CX, {a, b}), g(GateId::U1, {b}, {p[0] / 2})};
    case GateId::CU3: {
      const double theta = p[0], phi = p[1], lambda = p[2];
      return {g(GateId::U1, {a}, {(lambda + phi) / 2}), g(GateId::U1, {b}, {(lambda - phi) / 2}),
              g(GateId::CX, {a, b}), g(GateId::U3, {b}, {-theta / 2, 0.0, -(phi + lambda) / 2}),
              g(GateId::CX, {a, b}), g(GateId::U3, {b}, {theta / 2, phi, 0.0})};
    }
    case GateId::Swap: return {g(GateId::CX, {a, b}), g(GateId::CX, {b, a}), g(GateId::CX, {a, b})};
    default: throw TranspileError("cannot translate 2-qubit gate '" + ins.gate.name + "'");
  }
}

struct Zyz {
  double theta, phi, lambda;
};

// u ~ rz(phi) ry(theta) rz(lambda) up to global phase.
Zyz zyz_angles(const Matrix2& u) {
  const Complex det = u[0] * u[3] - u[1] * u[2];
  const Complex scale = 1.0 / std::sqrt(det);
  const Complex v00 = u[0] * scale, v10 = u[2] * scale, v11 = u[3] * scale;
  const double theta = 2 * std::atan2(std::abs(v10), std::abs(v00));
  double sum = 2 * std::arg(v11);
  double diff = 2 * std::arg(v10);
  if (std::abs(v10) < 1e-14) diff = 0;
  if (std::abs(v00) < 1e-14) sum = diff;
  return {theta, (sum + diff) / 2, (sum - diff) / 2};
}

bool can_use_sx(const Basis& basis) { return has(basis, "rz") && has(basis, "sx"); }

}  // namespace

const Basis& default_basis() {
  static const Basis basis{"sx", "x", "rz", "cz"};
  return basis;
}

Basis parse_basis(std::string_view text) {
  Basis basis;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    basis.insert(item.substr(b, e - b + 1));
  }
  return basis;
}

std::string format_basis(const Basis& basis) {
  std::string out;
  for (const auto& g : basis) out += (out.empty() ? "" : ",") + g;
  return out;
}

std::vector<Instruction> synthesize_1q(const Matrix2& u, Qubit qubit, const Basis& basis) {
  const auto [theta, phi, lambda] = zyz_angles(u);
  std::vector<Instruction> out;
  auto rz = [&](double angle) {
    if (!negligible(angle)) out.push_back(circuit::make_instruction(GateId::RZ, {qubit}, {wrap(angle)}));
  };
  if (can_use_sx(basis)) {
    if (std::abs(theta) < kAngleTol) {
      rz(phi + lambda);
    } else if (std::abs(theta - kPi / 2) < kAngleTol) {
      rz(lambda - kPi / 2);
      out.push_back(circuit::make_instruction(GateId::SX, {qubit}));
      rz(phi + kPi / 2);
    } else if (std::abs(theta - kPi) < kAngleTol && has(basis, "x")) {
      rz(lambda + kPi);
      out.push_back(circuit::make_instruction(GateId::X, {qubit}));
      rz(phi);
    } else {
      rz(lambda);
      out.push_back(circuit::make_instruction(GateId::SX, {qubit}));
      rz(theta + kPi);
      out.push_back(circuit::make_instruction(GateId::SX, {qubit}));
      rz(phi + kPi);
    }
    return out;
  }
  if (has(basis, "u3")) {
    if (std::abs(theta) < kAngleTol && negligible(phi + lambda)) return out;
    out.push_back(circuit::make_instruction(GateId::U3, {qubit}, {theta, wrap(phi), wrap(lambda)}));
    return out;
  }
  throw TranspileError("basis {" + format_basis(basis) + "} cannot express single-qubit gates (needs rz+sx or u3)");
}

Circuit translate_basis(const Circuit& circuit, const Basis& basis) {
  const bool keep_cx = has(basis, "cx");
  if (!keep_cx && !has(basis, "cz")) {
    throw TranspileError("basis {" + format_basis(basis) + "} has no two-qubit entangler (cx or cz)");
  }
  Circuit out = circuit.empty_like();
  auto lower_1q = [&](const Instruction& ins) {
    if (has(basis, ins.gate.name)) {
      out.append(ins);
      return;
    }
    for (auto& g : synthesize_1q(circuit::matrix_1q(ins.gate.id, circuit::bound_values(ins)), ins.qubits[0], basis)) {
      g.condition = ins.condition;
      out.append(std::move(g));
    }
  };
  for (const auto& ins : circuit.instructions()) {
    if (always_allowed(ins.gate.id) || has(basis, ins.gate.name)) {
      out.append(ins);
    } else if (ins.arity() == 1) {
      lower_1q(ins);
    } else if (ins.arity() == 2) {
      for (const auto& part : expand_to_cx(ins)) {
        if (part.gate.id != GateId::CX) {
          lower_1q(part);
        } else if (keep_cx) {
          out.append(part);
        } else {
          const auto t = part.qubits[1];
          lower_1q(gate(GateId::H, {t}, {}, part));
          out.append(gate(GateId::CZ, {part.qubits[0], t}, {}, part));
          lower_1q(gate(GateId::H, {t}, {}, part));
        }
      }
    } else {
      throw TranspileError("translate_basis needs 1Q/2Q gates, got '" + ins.gate.name + "'");
    }
  }
  return out;
}

Circuit merge_1q_runs(const Circuit& circuit, const Basis& basis) {
  struct Run {
    std::vector<Instruction> gates;
    Matrix2 product{1.0, 0.0, 0.0, 1.0};
  };
  Circuit out = circuit.empty_like();
  std::vector<Run> runs(circuit.num_qubits());
  auto flush = [&](Qubit q) {
    auto& run = runs[q];
    if (run.gates.empty()) return;
    auto merged = synthesize_1q(run.product, q, basis);
    bool originals_ok = true;
    for (const auto& g : run.gates) originals_ok = originals_ok && has(basis, g.gate.name);
    if (merged.size() < run.gates.size() || !originals_ok) {
      for (auto& g : merged) out.append(std::move(g));
    } else {
      for (auto& g : run.gates) out.append(std::move(g));
    }
    run = Run{};
  };
  for (const auto& ins : circuit.instructions()) {
    const bool mergeable = ins.arity() == 1 && !ins.condition && circuit::has_matrix(ins.gate.id) &&
                           circuit::is_unitary(ins.gate.id) && ins.gate.id != GateId::Barrier;
    if (mergeable) {
      bool bound = true;
      for (const auto& p : ins.params) bound = bound && p.is_bound();
      if (bound) {
        auto& run = runs[ins.qubits[0]];
        run.product = circuit::multiply(circuit::matrix_1q(ins.gate.id, circuit::bound_values(ins)), run.product);
        run.gates.push_back(ins);
        continue;
      }
    }
    for (auto q : ins.qubits) flush(q);
    out.append(ins);
  }
  for (std::size_t q = 0; q < runs.size(); ++q) flush(static_cast<Qubit>(q));
  return out;
}

}  // namespace qbench::transpiler
