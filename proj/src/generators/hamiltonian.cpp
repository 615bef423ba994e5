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

#include "qbench/generators/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "qbench/error.hpp"
#include "qbench/generators/rng.hpp"
#include "qbench/log.hpp"

namespace qbench::generators {

std::string category_name(Category category) {
  switch (category) {
    case Category::Chemistry: return "chemistry";
    case Category::CondensedMatter: return "condensed_matter";
    case Category::DiscreteOpt: return "discrete_opt";
    case Category::BinaryOpt: return "binary_opt";
  }
  return "unknown";
}

std::optional<Category> parse_category(std::string_view name) {
  for (auto c : kCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw GeneratorError("hamiltonian line " + std::to_string(line) + ": " + message);
}

double parse_real(std::string_view text, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail(line, "invalid number '" + std::string(text) + "'");
  return v;
}

}  // namespace

Hamiltonian parse_pauli_hamiltonian(const std::string& text) {
  Hamiltonian h;
  bool have_qubits = false;
  bool have_category = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (const auto eq = line.find('='); eq != std::string_view::npos) {
      if (!h.terms.empty()) fail(line_no, "header line after the first term");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key == "num_qubits") {
        const double n = parse_real(value, line_no);
        if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n))) fail(line_no, "num_qubits must be a positive integer");
        h.num_qubits = static_cast<std::size_t>(n);
        have_qubits = true;
      } else if (key == "name") {
        h.name = std::string(value);
      } else if (key == "category") {
        const auto c = parse_category(value);
        if (!c) fail(line_no, "unknown category '" + std::string(value) + "'");
        h.category = *c;
        have_category = true;
      } else {
        fail(line_no, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }
    if (!have_qubits) fail(line_no, "num_qubits must precede the terms");
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) fail(line_no, "expected '<pauli> <coefficient>'");
    PauliTerm term{std::string(line.substr(0, space)), parse_real(trim(line.substr(space)), line_no)};
    if (term.pauli.size() != h.num_qubits) {
      fail(line_no, "Pauli string length " + std::to_string(term.pauli.size()) + " != num_qubits " +
                        std::to_string(h.num_qubits));
    }
    if (term.pauli.find_first_not_of("IXYZ") != std::string::npos) fail(line_no, "invalid Pauli string '" + term.pauli + "'");
    h.terms.push_back(std::move(term));
  }
  if (!have_qubits) throw GeneratorError("hamiltonian is missing num_qubits");
  if (!have_category) throw GeneratorError("hamiltonian is missing category");
  if (h.name.empty()) throw GeneratorError("hamiltonian is missing name");
  if (h.terms.empty()) throw GeneratorError("hamiltonian '" + h.name + "' has no terms");
  return h;
}

Hamiltonian load_pauli_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GeneratorError("cannot open hamiltonian file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_pauli_hamiltonian(buffer.str());
  } catch (const GeneratorError& e) {
    throw GeneratorError(path.string() + ": " + e.what());
  }
}

std::string format_pauli_hamiltonian(const Hamiltonian& h) {
  std::string out = "num_qubits = " + std::to_string(h.num_qubits) + "\nname = " + h.name +
                    "\ncategory = " + category_name(h.category) + "\n";
  for (const auto& t : h.terms) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), t.coefficient);
    out += t.pauli + " " + std::string(buf, ptr) + "\n";
  }
  return out;
}

std::vector<Hamiltonian> load_hamiltonian_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ham") files.push_back(entry.path());
  }
  if (ec) throw GeneratorError("cannot list hamiltonian directory " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<Hamiltonian> out;
  for (const auto& f : files) out.push_back(load_pauli_hamiltonian(f));
  return out;
}

Quotas scale_quotas(const Quotas& quotas, std::size_t total) {
  const std::size_t sum = std::accumulate(quotas.begin(), quotas.end(), std::size_t{0});
  if (sum == 0 || total >= sum) return quotas;
  Quotas out{};
  std::array<std::size_t, 4> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = quotas[i] * total / sum;
    remainder[i] = quotas[i] * total % sum;
    assigned += out[i];
  }
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[order[k]];
  return out;
}

std::vector<Hamiltonian> suite_sample(const std::vector<Hamiltonian>& corpus, std::size_t max_qubits,
                                      std::size_t max_terms, const Quotas& quotas, std::uint64_t seed) {
  std::array<std::vector<const Hamiltonian*>, 4> pools;
  std::set<std::string> seen;
  std::size_t eligible = 0;
  for (const auto& h : corpus) {
    if (!seen.insert(h.name).second) {
      log::warn("duplicate hamiltonian name '" + h.name + "' ignored");
      continue;
    }
    if (h.num_qubits > max_qubits || h.terms.size() > max_terms) continue;
    pools[static_cast<std::size_t>(h.category)].push_back(&h);
    ++eligible;
  }
  const Quotas want = scale_quotas(quotas, eligible);
  for (std::size_t i = 0; i < 4; ++i) {
    if (want[i] > pools[i].size()) {
      throw GeneratorError("quota of " + std::to_string(want[i]) + " " + category_name(kCategories[i]) +
                           " hamiltonians but only " + std::to_string(pools[i].size()) + " qualify");
    }
  }
  Rng rng(seed);
  std::vector<Hamiltonian> out;
  for (std::size_t i = 0; i < 4; ++i) {
    auto pool = pools[i];
    std::sort(pool.begin(), pool.end(), [](auto* a, auto* b) { return a->name < b->name; });
    rng.shuffle(pool);
    for (std::size_t k = 0; k < want[i]; ++k) out.push_back(*pool[k]);
  }
  if (out.empty()) log::warn("hamiltonian sample is empty after applying the qubit and term caps");
  return out;
}

}  // namespace qbench::generators
