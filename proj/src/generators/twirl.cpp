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

#include <array>

#include "qbench/error.hpp"
#include "qbench/generators/generators.hpp"
#include "qbench/generators/rng.hpp"

namespace qbench::generators {

using circuit::Circuit;
using circuit::GateId;
using circuit::Instruction;

namespace {

// Entries of Pauli and Clifford matrices are Gaussian integers, so the search
// below is exact and can run at compile time.
struct Gauss {
  int re = 0;
  int im = 0;
  constexpr Gauss operator*(Gauss o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  constexpr Gauss operator+(Gauss o) const { return {re + o.re, im + o.im}; }
  constexpr bool operator==(const Gauss&) const = default;
};

using M2 = std::array<Gauss, 4>;
using M4 = std::array<Gauss, 16>;

constexpr std::array<M2, 4> kPaulis{{
    {{{1, 0}, {0, 0}, {0, 0}, {1, 0}}},
    {{{0, 0}, {1, 0}, {1, 0}, {0, 0}}},
    {{{0, 0}, {0, -1}, {0, 1}, {0, 0}}},
    {{{1, 0}, {0, 0}, {0, 0}, {-1, 0}}},
}};

// Local index bit 0 belongs to qubits[0].
constexpr M4 pair_matrix(int a, int b) {
  M4 m{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r * 4 + c] = kPaulis[a][(r & 1) * 2 + (c & 1)] * kPaulis[b][(r >> 1) * 2 + (c >> 1)];
  }
  return m;
}

constexpr M4 mul(const M4& x, const M4& y) {
  M4 m{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      Gauss s{};
      for (int k = 0; k < 4; ++k) s = s + x[r * 4 + k] * y[k * 4 + c];
      m[r * 4 + c] = s;
    }
  }
  return m;
}

// x == phase * y for some unit phase in {1, i, -1, -i}.
constexpr bool equal_up_to_phase(const M4& x, const M4& y) {
  constexpr std::array<Gauss, 4> phases{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  for (auto p : phases) {
    bool same = true;
    for (int i = 0; i < 16; ++i) same = same && x[i] == p * y[i];
    if (same) return true;
  }
  return false;
}

// Control on local bit 0, target on bit 1.
constexpr M4 kCX{{{1, 0}, {}, {}, {},  //
                  {}, {}, {}, {1, 0},  //
                  {}, {}, {1, 0}, {},  //
                  {}, {1, 0}, {}, {}}};
constexpr M4 kCZ{{{1, 0}, {}, {}, {},  //
                  {}, {1, 0}, {}, {},  //
                  {}, {}, {1, 0}, {},  //
                  {}, {}, {}, {-1, 0}}};

using Table = std::array<std::pair<int, int>, 16>;

// For each pre-pair, the post-pair with post * G * pre = G up to phase.
// G is real and self-inverse, so post = G * pre * G.
constexpr Table build_table(const M4& g) {
  Table table{};
  for (int pre = 0; pre < 16; ++pre) {
    const M4 target = mul(mul(g, pair_matrix(pre & 3, pre >> 2)), g);
    table[pre] = {-1, -1};
    for (int post = 0; post < 16; ++post) {
      if (equal_up_to_phase(pair_matrix(post & 3, post >> 2), target)) table[pre] = {post & 3, post >> 2};
    }
  }
  return table;
}

constexpr Table kCXTable = build_table(kCX);
constexpr Table kCZTable = build_table(kCZ);

static_assert(kCXTable[1] == std::pair{1, 1}, "X on control spreads to the target");
static_assert(kCZTable[1] == std::pair{1, 3}, "X on one side of cz picks up Z on the other");

constexpr GateId kPauliGate[] = {GateId::Id, GateId::X, GateId::Y, GateId::Z};

const Table& table_for(GateId gate) {
  if (gate == GateId::CX) return kCXTable;
  if (gate == GateId::CZ) return kCZTable;
  throw GeneratorError("pauli_twirl supports only cx and cz");
}

}  // namespace

std::pair<PauliOp, PauliOp> twirl_partner(GateId gate, PauliOp a, PauliOp b) {
  const auto [c, d] = table_for(gate)[static_cast<int>(a) + 4 * static_cast<int>(b)];
  return {static_cast<PauliOp>(c), static_cast<PauliOp>(d)};
}

Circuit pauli_twirl(const Circuit& input, std::uint64_t seed) {
  Rng rng(seed);
  Circuit out = input.empty_like();
  auto dress = [&out](const Instruction& gate, int a, int b) {
    const int paulis[2] = {a, b};
    for (int k = 0; k < 2; ++k) {
      if (paulis[k] == 0) continue;
      Instruction p = circuit::make_instruction(kPauliGate[paulis[k]], {gate.qubits[k]});
      p.condition = gate.condition;
      out.append(std::move(p));
    }
  };
  for (const auto& ins : input.instructions()) {
    if (!ins.is_two_qubit_gate()) {
      out.append(ins);
      continue;
    }
    const auto& table = table_for(ins.gate.id);
    const auto pre = static_cast<int>(rng.below(16));
    dress(ins, pre & 3, pre >> 2);
    out.append(ins);
    dress(ins, table[pre].first, table[pre].second);
  }
  out.set_metadata("twirl_seed", std::to_string(seed));
  return out;
}

}  // namespace qbench::generators
