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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qbench::generators {

/// Pauli string over {I,X,Y,Z}; character i acts on qubit i.
struct PauliTerm {
  std::string pauli;
  double coefficient = 0.0;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

enum class Category : std::uint8_t { Chemistry, CondensedMatter, DiscreteOpt, BinaryOpt };

inline constexpr std::array<Category, 4> kCategories{Category::Chemistry, Category::CondensedMatter,
                                                     Category::DiscreteOpt, Category::BinaryOpt};

std::string category_name(Category category);
std::optional<Category> parse_category(std::string_view name);

struct Hamiltonian {
  std::string name;
  Category category = Category::Chemistry;
  std::size_t num_qubits = 0;
  std::vector<PauliTerm> terms;

  friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;
};

/// Text format:
///   # comment
///   num_qubits = 4
///   name = chain4
///   category = condensed_matter
///   ZZII 0.5
///   XIII -1.25
/// Header lines may appear in any order before the first term.
Hamiltonian parse_pauli_hamiltonian(const std::string& text);
Hamiltonian load_pauli_hamiltonian(const std::filesystem::path& path);
std::string format_pauli_hamiltonian(const Hamiltonian& h);

/// Every *.ham file in `dir`, sorted by file name.
std::vector<Hamiltonian> load_hamiltonian_dir(const std::filesystem::path& dir);

/// Per-category counts in kCategories order.
using Quotas = std::array<std::size_t, 4>;
inline constexpr Quotas kDefaultQuotas{35, 35, 15, 15};

/// Largest-remainder scaling of `quotas` so they sum to `total`.
Quotas scale_quotas(const Quotas& quotas, std::size_t total);

/// Filters by the qubit and term caps, scales the quotas down when fewer
/// Hamiltonians survive than requested, and draws each category's share with
/// a seeded shuffle. Duplicate names keep the first entry. Throws
/// GeneratorError when a category has fewer members than its quota. An empty
/// selection is logged as a warning.
std::vector<Hamiltonian> suite_sample(const std::vector<Hamiltonian>& corpus, std::size_t max_qubits,
                                      std::size_t max_terms, const Quotas& quotas, std::uint64_t seed);

}  // namespace qbench::generators
