// Copyright 2026 The CDM Authors
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

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cdm/qstate.hpp"

namespace cdm {

struct Check {
  std::string description;
  double residual;
  /// Pass threshold applied to `residual`.
  double threshold;
  bool pass;
};

using OutputValue = std::variant<ComplexMatrix, ComplexVector, double, std::string>;

struct NamedOutput {
  std::string name;
  OutputValue value;
};

/// Named inputs, outputs and residual checks of one deterministic run.
struct ScenarioReport {
  std::string name;
  std::vector<std::pair<std::string, BlochVector>> inputs;
  std::vector<NamedOutput> outputs;
  std::vector<Check> checks;

  void add_output(std::string label, OutputValue value) { outputs.push_back({std::move(label), std::move(value)}); }

  /// Records |residual| against `threshold`; a non-finite residual fails.
  void add_check(std::string description, double residual, double threshold) {
    const double r = std::isfinite(residual) ? std::abs(residual) : residual;
    checks.push_back({std::move(description), r, threshold, std::isfinite(r) && r <= threshold});
  }

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  const NamedOutput* find_output(const std::string& label) const {
    for (const auto& o : outputs) {
      if (o.name == label) return &o;
    }
    return nullptr;
  }

  const Check* find_check(const std::string& description) const {
    for (const auto& c : checks) {
      if (c.description == description) return &c;
    }
    return nullptr;
  }
};

/// Frobenius norm of a − b.
inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("distance: shape mismatch");
  return (a - b).norm();
}

}  // namespace cdm
