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

#include <set>
#include <string>

#include "qbench/circuit/circuit.hpp"

namespace qbench::circuit {

/// Names of all symbols appearing in instruction parameters.
std::set<std::string> free_symbols(const Circuit& circuit);

/// Replaces every symbol with its assigned value. The gate sequence is
/// unchanged. Extra assignment entries are ignored; a missing one throws
/// UnboundParameter.
Circuit bind_parameters(const Circuit& circuit, const Assignment& assignment);

}  // namespace qbench::circuit
