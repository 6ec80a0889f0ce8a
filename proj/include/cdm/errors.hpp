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

#include <stdexcept>
#include <string>

namespace cdm {

/// Operand shapes or factor indices do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A value violates its type invariant (unnormalized vector, non-hermitian
/// density matrix, non-idempotent projector, ...).
class InvalidState : public std::invalid_argument {
 public:
  explicit InvalidState(const std::string& what) : std::invalid_argument(what) {}
};

/// The conditioning event has (numerically) zero probability, so the
/// conditional density matrix is undefined.
class ZeroProbabilityCondition : public std::domain_error {
 public:
  ZeroProbabilityCondition(const std::string& what, double probability)
      : std::domain_error(what), probability_(probability) {}

  double probability() const noexcept { return probability_; }

 private:
  double probability_;
};

/// A measurement that the noiseless model requires to be deterministic has
/// probabilistic outcomes (measurement basis not aligned with the state).
class BasisMismatch : public std::domain_error {
 public:
  explicit BasisMismatch(const std::string& what) : std::domain_error(what) {}
};

}  // namespace cdm
