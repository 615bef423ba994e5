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

#include <map>
#include <optional>
#include <string>

namespace qbench::circuit {

using Assignment = std::map<std::string, double, std::less<>>;

/// A gate angle: either a constant or an affine function `multiplier * symbol + offset`
/// of a single named symbol.
class ParameterExpr {
 public:
  ParameterExpr(double constant = 0.0) : offset_(constant) {}  // NOLINT(google-explicit-constructor)

  static ParameterExpr symbol(std::string name, double multiplier = 1.0, double offset = 0.0);

  bool is_bound() const noexcept { return !symbol_.has_value(); }
  const std::optional<std::string>& symbol_name() const noexcept { return symbol_; }
  double multiplier() const noexcept { return multiplier_; }
  double offset() const noexcept { return offset_; }

  /// The constant value. Throws UnboundParameter when a symbol is present.
  double value() const;

  /// Substitutes the symbol, if any. Missing symbol throws UnboundParameter.
  ParameterExpr bind(const Assignment& assignment) const;

  ParameterExpr scaled(double factor) const;
  ParameterExpr shifted(double delta) const;

  friend bool operator==(const ParameterExpr&, const ParameterExpr&) = default;

 private:
  std::optional<std::string> symbol_;
  double multiplier_ = 1.0;
  double offset_ = 0.0;
};

}  // namespace qbench::circuit
