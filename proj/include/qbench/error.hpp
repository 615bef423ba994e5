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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbench {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A circuit violates an Instruction or Circuit invariant.
class InvalidCircuit : public Error {
 public:
  using Error::Error;
};

/// A 2Q metric was requested on a circuit containing gates of arity >= 3.
class MetricUndefined : public Error {
 public:
  using Error::Error;
};

/// A free parameter symbol had no value where one was required.
class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(std::string symbol)
      : Error("unbound parameter '" + symbol + "'"), symbol_(std::move(symbol)) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

/// Problems reading OpenQASM text. Carries a 1-based source position when known.
class QasmError : public Error {
 public:
  enum class Kind { Syntax, UnknownGate, RegisterOverflow, RegisterWidthLimit, Version, UnsupportedVersion3, Semantic };

  QasmError(Kind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), kind_(kind), line_(line), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Invalid topology parameters or a malformed device description.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// The circuit does not fit the target. Maps to the SKIPPED status.
class WidthExceeded : public Error {
 public:
  WidthExceeded(std::size_t width, std::size_t capacity)
      : Error("circuit needs " + std::to_string(width) + " qubits but the target has " +
              std::to_string(capacity)),
        width_(width),
        capacity_(capacity) {}
  std::size_t width() const noexcept { return width_; }
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  std::size_t width_;
  std::size_t capacity_;
};

/// Generator arguments or input data that cannot produce a circuit.
class GeneratorError : public Error {
 public:
  using Error::Error;
};

/// A compilation step cannot handle the circuit or basis it was given.
class TranspileError : public Error {
 public:
  using Error::Error;
};

/// Statevector / equivalence oracle preconditions.
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration file or value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed wire-protocol line.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Problems with result documents or aggregation inputs.
class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbench
