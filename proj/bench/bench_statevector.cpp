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

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "qbench/circuit/gate_matrix.hpp"
#include "qbench/generators/generators.hpp"
#include "qbench/verify/kernels.hpp"
#include "qbench/verify/verify.hpp"

namespace {

using namespace qbench;

verify::Amplitudes uniform_state(std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  return verify::Amplitudes(dim, verify::Amplitudes::value_type(1.0 / std::sqrt(double(dim)), 0.0));
}

template <bool Parallel>
void BM_apply_1q(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto state = uniform_state(n);
  const auto u = circuit::u3_matrix(0.3, 0.2, 0.1);
  std::size_t q = 0;
  for (auto _ : st) {
    if constexpr (Parallel) {
      verify::kernels::apply_1q_parallel(state, u, q);
    } else {
      verify::kernels::apply_1q_serial(state, u, q);
    }
    q = (q + 1) % n;
    benchmark::DoNotOptimize(state.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(state.size()));
}

template <bool Parallel>
void BM_apply_2q(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto state = uniform_state(n);
  const auto g = circuit::gate_matrix(circuit::GateId::CX);
  std::size_t q = 0;
  for (auto _ : st) {
    const std::size_t a = q, b = (q + n / 2) % n;
    if constexpr (Parallel) {
      verify::kernels::apply_2q_parallel(state, g, a, b);
    } else {
      verify::kernels::apply_2q_serial(state, g, a, b);
    }
    q = (q + 1) % n;
    benchmark::DoNotOptimize(state.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(state.size()));
}

void BM_evolve_qv(benchmark::State& st, verify::Kernel kernel) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto qv = generators::gen_qv(n, n, 7);
  for (auto _ : st) {
    auto state = verify::statevector(qv, n, kernel);
    benchmark::DoNotOptimize(state.data());
  }
}

}  // namespace

BENCHMARK(BM_apply_1q<false>)->DenseRange(14, 20, 2);
BENCHMARK(BM_apply_1q<true>)->DenseRange(14, 20, 2);
BENCHMARK(BM_apply_2q<false>)->DenseRange(14, 20, 2);
BENCHMARK(BM_apply_2q<true>)->DenseRange(14, 20, 2);
BENCHMARK_CAPTURE(BM_evolve_qv, serial, qbench::verify::Kernel::Serial)->DenseRange(8, 14, 2);
BENCHMARK_CAPTURE(BM_evolve_qv, parallel, qbench::verify::Kernel::Parallel)->DenseRange(8, 14, 2);

BENCHMARK_MAIN();
