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

#include "qbench/circuit/binding.hpp"

namespace qbench::circuit {

std::set<std::string> free_symbols(const Circuit& circuit) {
  std::set<std::string> symbols;
  for (const auto& ins : circuit.instructions()) {
    for (const auto& p : ins.params) {
      if (p.symbol_name()) symbols.insert(*p.symbol_name());
    }
  }
  return symbols;
}

Circuit bind_parameters(const Circuit& circuit, const Assignment& assignment) {
  Circuit out = circuit.empty_like();
  for (const auto& ins : circuit.instructions()) {
    Instruction bound = ins;
    for (auto& p : bound.params) p = p.bind(assignment);
    out.append(std::move(bound));
  }
  return out;
}

}  // namespace qbench::circuit
