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

#include "qbench/verify/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace qbench::verify::kernels {

using circuit::Complex;

namespace {

// Below this many independent groups the thread start-up costs more than the work.
constexpr std::int64_t kParallelThreshold = 1 << 12;

// Spreads the bits of i apart so that the (sorted) positions are zero.
inline std::size_t insert_zeros(std::size_t i, const std::size_t* sorted, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t low = i & ((std::size_t{1} << sorted[j]) - 1);
    i = ((i >> sorted[j]) << (sorted[j] + 1)) | low;
  }
  return i;
}

inline void step_1q(Complex* psi, const circuit::Matrix2& u, std::size_t qubit, std::size_t i) {
  const std::size_t i0 = insert_zeros(i, &qubit, 1);
  const std::size_t i1 = i0 | (std::size_t{1} << qubit);
  const Complex a = psi[i0], b = psi[i1];
  psi[i0] = u[0] * a + u[1] * b;
  psi[i1] = u[2] * a + u[3] * b;
}

inline void step_2q(Complex* psi, const Complex* m, const std::size_t* sorted, std::size_t q0, std::size_t q1,
                    std::size_t i) {
  const std::size_t base = insert_zeros(i, sorted, 2);
  const std::size_t idx[4] = {base, base | (std::size_t{1} << q0), base | (std::size_t{1} << q1),
                              base | (std::size_t{1} << q0) | (std::size_t{1} << q1)};
  const Complex in[4] = {psi[idx[0]], psi[idx[1]], psi[idx[2]], psi[idx[3]]};
  for (int r = 0; r < 4; ++r) {
    psi[idx[r]] = m[r * 4] * in[0] + m[r * 4 + 1] * in[1] + m[r * 4 + 2] * in[2] + m[r * 4 + 3] * in[3];
  }
}

struct Dense {
  std::vector<std::size_t> sorted;
  std::vector<std::size_t> offsets;  // full-index offset of each local index
};

Dense prepare(const std::vector<circuit::Qubit>& qubits) {
  Dense d;
  d.sorted.assign(qubits.begin(), qubits.end());
  std::sort(d.sorted.begin(), d.sorted.end());
  const std::size_t local = std::size_t{1} << qubits.size();
  d.offsets.resize(local);
  for (std::size_t l = 0; l < local; ++l) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      if ((l >> k) & 1U) off |= std::size_t{1} << qubits[k];
    }
    d.offsets[l] = off;
  }
  return d;
}

inline void step_dense(Complex* psi, const circuit::GateMatrix& g, const Dense& d, std::size_t i, Complex* scratch) {
  const std::size_t base = insert_zeros(i, d.sorted.data(), d.sorted.size());
  const std::size_t local = d.offsets.size();
  for (std::size_t l = 0; l < local; ++l) scratch[l] = psi[base + d.offsets[l]];
  for (std::size_t r = 0; r < local; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < local; ++c) acc += g.data[r * local + c] * scratch[c];
    psi[base + d.offsets[r]] = acc;
  }
}

}  // namespace

void apply_1q_serial(Amplitudes& state, const circuit::Matrix2& u, std::size_t qubit) {
  const std::size_t groups = state.size() / 2;
  for (std::size_t i = 0; i < groups; ++i) step_1q(state.data(), u, qubit, i);
}

void apply_1q_parallel(Amplitudes& state, const circuit::Matrix2& u, std::size_t qubit) {
  const auto groups = static_cast<std::int64_t>(state.size() / 2);
  Complex* psi = state.data();
#pragma omp parallel for schedule(static) if (groups >= kParallelThreshold)
  for (std::int64_t i = 0; i < groups; ++i) step_1q(psi, u, qubit, static_cast<std::size_t>(i));
}

void apply_2q_serial(Amplitudes& state, const circuit::GateMatrix& g, std::size_t q0, std::size_t q1) {
  const std::size_t sorted[2] = {std::min(q0, q1), std::max(q0, q1)};
  const std::size_t groups = state.size() / 4;
  for (std::size_t i = 0; i < groups; ++i) step_2q(state.data(), g.data.data(), sorted, q0, q1, i);
}

void apply_2q_parallel(Amplitudes& state, const circuit::GateMatrix& g, std::size_t q0, std::size_t q1) {
  const std::size_t sorted[2] = {std::min(q0, q1), std::max(q0, q1)};
  const auto groups = static_cast<std::int64_t>(state.size() / 4);
  Complex* psi = state.data();
  const Complex* m = g.data.data();
#pragma omp parallel for schedule(static) if (groups >= kParallelThreshold)
  for (std::int64_t i = 0; i < groups; ++i) step_2q(psi, m, sorted, q0, q1, static_cast<std::size_t>(i));
}

void apply_dense_serial(Amplitudes& state, const circuit::GateMatrix& g, const std::vector<circuit::Qubit>& qubits) {
  const Dense d = prepare(qubits);
  std::vector<Complex> scratch(d.offsets.size());
  const std::size_t groups = state.size() >> qubits.size();
  for (std::size_t i = 0; i < groups; ++i) step_dense(state.data(), g, d, i, scratch.data());
}

void apply_dense_parallel(Amplitudes& state, const circuit::GateMatrix& g, const std::vector<circuit::Qubit>& qubits) {
  const Dense d = prepare(qubits);
  const auto groups = static_cast<std::int64_t>(state.size() >> qubits.size());
  Complex* psi = state.data();
#pragma omp parallel if (groups >= kParallelThreshold)
  {
    std::vector<Complex> scratch(d.offsets.size());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < groups; ++i) step_dense(psi, g, d, static_cast<std::size_t>(i), scratch.data());
  }
}

}  // namespace qbench::verify::kernels
