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

#include "qbench/circuit/parameter.hpp"

#include "qbench/error.hpp"

namespace qbench::circuit {

ParameterExpr ParameterExpr::symbol(std::string name, double multiplier, double offset) {
  ParameterExpr p(offset);
  p.symbol_ = std::move(name);
  p.multiplier_ = multiplier;
  return p;
}

double ParameterExpr::value() const {
  if (symbol_) throw UnboundParameter(*symbol_);
  return offset_;
}

ParameterExpr ParameterExpr::bind(const Assignment& assignment) const {
  if (!symbol_) return *this;
  auto it = assignment.find(*symbol_);
  if (it == assignment.end()) throw UnboundParameter(*symbol_);
  return ParameterExpr(multiplier_ * it->second + offset_);
}

ParameterExpr ParameterExpr::scaled(double factor) const {
  ParameterExpr p = *this;
  p.offset_ *= factor;
  if (p.symbol_) p.multiplier_ *= factor;
  return p;
}

ParameterExpr ParameterExpr::shifted(double delta) const {
  ParameterExpr p = *this;
  p.offset_ += delta;
  return p;
}

}  // namespace qbench::circuit
