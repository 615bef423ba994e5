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

#include <filesystem>
#include <string>
#include <string_view>

#include "qbench/circuit/circuit.hpp"

namespace qbench::qasm {

struct ParseOptions {
  /// Widest classical register accepted. Wider declarations are a
  /// RegisterWidthLimit error rather than an allocation attempt.
  std::size_t max_creg_width = 512;
  /// Expand user `gate` definitions into their bodies. When false, calls to
  /// user gates are kept as opaque named gates of the declared arity.
  bool inline_user_gates = true;
};

/// Parses OpenQASM 2.0 text. Quantum registers are concatenated in
/// declaration order into one index space. `include "qelib1.inc"` resolves to
/// the built-in gate table; nothing is read from disk.
circuit::Circuit parse_qasm(std::string_view text, const ParseOptions& options = {});

struct LoadedQasm {
  circuit::Circuit circuit;
  /// Wall-clock seconds spent parsing (file read excluded).
  double parse_seconds = 0.0;
};

LoadedQasm load_qasm_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Writes OpenQASM 2.0 with one `q` register and the circuit's classical
/// registers. Angles use 17 significant digits, so constants round-trip
/// exactly. Throws UnboundParameter if any parameter is symbolic.
std::string emit_qasm(const circuit::Circuit& circuit);

void write_qasm_file(const circuit::Circuit& circuit, const std::filesystem::path& path);

}  // namespace qbench::qasm
