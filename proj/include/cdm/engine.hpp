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

// Composition, reduction and conditioning of subsystem states.
//
//   compose:      ρ = ρ_a ⊗ ρ_b
//   reduce:       ρ_keep = Tr_rest ρ
//   conditional:  ρ_{rest/on} = Tr_on(P̃ ρ) / Tr(P̃ ρ),  P̃ = P on `on`, I elsewhere

#include <algorithm>
#include <string>

#include "cdm/qstate.hpp"

namespace cdm {

/// Probabilities at or below this are treated as an impossible condition.
inline constexpr double kZeroProbabilityThreshold = 1e-12;

struct Composition {
  DensityMatrix state;
  /// At least one factor was pure (ρ² = ρ), so the joint state is the unique
  /// one consistent with the two marginals.
  bool uniqueness_premise;
};

inline bool is_pure(const DensityMatrix& rho, double tol = kDefaultTolerance) {
  return max_abs(rho.matrix() * rho.matrix() - rho.matrix()) <= tol;
}

inline Composition compose(const DensityMatrix& a, const DensityMatrix& b, double tol = kDefaultTolerance) {
  return {tensor(a, b), is_pure(a, tol) || is_pure(b, tol)};
}

/// State of the `keep` factors: partial trace over the complement.
inline DensityMatrix reduce(const DensityMatrix& rho, const FactorSet& keep, double tol = kDefaultTolerance) {
  detail::validate_factor_set(keep, rho.shape(), "reduce");
  if (keep.empty()) throw DimensionError("reduce: keep set is empty");
  if (keep.size() == rho.shape().size()) throw DimensionError("reduce: keep set covers every factor");
  const auto traced = detail::complement(keep, rho.shape().size());
  auto kept = keep;
  std::sort(kept.begin(), kept.end());
  return DensityMatrix(rho.shape().select(kept), partial_trace(rho.matrix(), rho.shape(), traced), tol);
}

namespace detail {

inline ComplexMatrix lift(const DensityMatrix& rho, const Projector& p, const FactorSet& on) {
  validate_factor_set(on, rho.shape(), "condition");
  if (on.empty()) throw DimensionError("condition: no factors to condition on");
  if (p.shape() != rho.shape().select(on)) throw DimensionError("condition: projector shape does not match the selected factors");
  return embed(p.matrix(), on, rho.shape());
}

inline double probability_of(const ComplexMatrix& lifted, const DensityMatrix& rho) {
  const Complex t = (lifted * rho.matrix()).trace();
  if (std::abs(t.imag()) > kDefaultTolerance) throw InvalidState("condition: probability has an imaginary part");
  return std::clamp(t.real(), 0.0, 1.0);
}

}  // namespace detail

/// Tr(P̃ ρ): probability that the `on` factors are found in the range of p.
inline double condition_probability(const DensityMatrix& rho, const Projector& p, const FactorSet& on) {
  return detail::probability_of(detail::lift(rho, p, on), rho);
}

enum class ConditionForm {
  /// Tr_on(P̃ρ) / Tr(P̃ρ)
  kLeft,
  /// Tr_on(P̃ρP̃) / Tr(P̃ρP̃)
  kSandwiched,
};

struct ConditionReport {
  /// State of the complement of `on`, in ascending factor order.
  DensityMatrix conditional;
  double probability;
  /// The condition was a projector of rank > 1 rather than a pure state.
  bool generalized;
};

/// Conditional density matrix of the factors outside `on`, given that the
/// `on` factors are found in the range of p.  Throws
/// ZeroProbabilityCondition when that event has probability <= 1e-12.
inline ConditionReport conditional(const DensityMatrix& rho, const Projector& p, const FactorSet& on,
                                   ConditionForm form = ConditionForm::kLeft, double tol = kDefaultTolerance) {
  const ComplexMatrix lifted = detail::lift(rho, p, on);
  if (on.size() == rho.shape().size()) throw DimensionError("conditional: conditioning on every factor leaves nothing");

  const double probability = detail::probability_of(lifted, rho);
  if (probability <= kZeroProbabilityThreshold) {
    throw ZeroProbabilityCondition("conditional: the condition has zero probability", probability);
  }

  const ComplexMatrix weighted = form == ConditionForm::kLeft ? ComplexMatrix(lifted * rho.matrix())
                                                              : ComplexMatrix(lifted * rho.matrix() * lifted);
  const ComplexMatrix numerator = partial_trace(weighted, rho.shape(), on);
  const Complex denominator = numerator.trace();

  const auto rest = detail::complement(on, rho.shape().size());
  return {DensityMatrix(rho.shape().select(rest), numerator / denominator, tol), probability, p.rank() > 1};
}

}  // namespace cdm
