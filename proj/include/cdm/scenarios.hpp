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

// Worked examples of conditioning entangled spin/polarization states,
// packaged as self-checking reports.  Every check compares a computed
// quantity against its closed-form value and records the residual.

#include <cmath>

#include "cdm/engine.hpp"
#include "cdm/report.hpp"

namespace cdm::scenarios {

namespace detail {

inline ComplexMatrix half_identity() { return ComplexMatrix::Identity(2, 2) * 0.5; }

}  // namespace detail

/// Electron-positron pair in the spin singlet about axis n; the positron is
/// filtered along m.
///
/// Factor 0 is the electron, factor 1 the positron.
inline ScenarioReport parapositronium(const BlochVector& n, const BlochVector& m, double tol = kDefaultTolerance) {
  ScenarioReport report;
  report.name = "parapositronium";
  report.inputs = {{"n", n}, {"m", m}};

  const auto rho = density(singlet(n));
  const auto rho_e = reduce(rho, {0});
  report.add_output("rho_e", rho_e.matrix());
  report.add_check("electron marginal is I/2", distance(rho_e.matrix(), detail::half_identity()), tol);

  const auto filter = projector(spin_state(m, 1));
  const auto cond = conditional(rho, filter, {1});
  const auto expected = projector(spin_state(m, -1));
  report.add_output("rho_e_given_p", cond.conditional.matrix());
  report.add_output("probability", cond.probability);
  report.add_check("conditional electron state is projector(chi_-m)", distance(cond.conditional.matrix(), expected.matrix()), tol);
  report.add_check("conditional electron state is pure", purity(cond.conditional) - 1.0, tol);
  report.add_check("filter pass probability is 1/2", cond.probability - 0.5, tol);
  return report;
}

/// φ(σ₁) = Σ_σ₃ χ_m*(σ₃) χ(σ₁, σ₃): contraction of the pair state's second
/// factor with ⟨χ_m|.
inline StateVector contract_second(const StateVector& pair, const StateVector& chi_m) {
  if (pair.shape() != FactorShape{2, 2} || chi_m.shape() != FactorShape{2}) {
    throw DimensionError("contract_second: expects a two-qubit pair and a single qubit");
  }
  ComplexVector phi = ComplexVector::Zero(2);
  for (Eigen::Index a = 0; a < 2; ++a) {
    for (Eigen::Index b = 0; b < 2; ++b) phi(a) += std::conj(chi_m[b]) * pair[2 * a + b];
  }
  return StateVector::unnormalized(FactorShape{2}, std::move(phi));
}

/// θ(σ₂) = Σ_σ₁ φ*(σ₁) χ(σ₁, σ₂): contraction of the pair state's first
/// factor with ⟨φ|.
inline StateVector contract_first(const StateVector& pair, const StateVector& phi) {
  if (pair.shape() != FactorShape{2, 2} || phi.shape() != FactorShape{2}) {
    throw DimensionError("contract_first: expects a two-qubit pair and a single qubit");
  }
  ComplexVector theta = ComplexVector::Zero(2);
  for (Eigen::Index b = 0; b < 2; ++b) {
    for (Eigen::Index a = 0; a < 2; ++a) theta(b) += std::conj(phi[a]) * pair[2 * a + b];
  }
  return StateVector::unnormalized(FactorShape{2}, std::move(theta));
}

/// Photons 1, 2 in the singlet about n (an internal axis the physics must
/// not depend on), photon 3 polarized along m; post-select photons 1 and 3
/// in the singlet and look at photon 2.
///
/// Only the singlet branch of the (1,3) measurement is modeled.
inline ScenarioReport teleportation(const BlochVector& m, const BlochVector& n, double tol = kDefaultTolerance) {
  ScenarioReport report;
  report.name = "teleportation";
  report.inputs = {{"m", m}, {"n", n}};

  const auto pair = singlet(n);
  const auto chi_m = spin_state(m, 1);
  const auto rho = density(tensor(pair, chi_m));

  const auto rho_2 = reduce(rho, {1});
  report.add_output("rho_2", rho_2.matrix());
  report.add_check("unconditioned photon 2 is I/2", distance(rho_2.matrix(), detail::half_identity()), tol);

  const auto phi = contract_second(pair, chi_m);
  const auto theta = contract_first(pair, phi);
  const double theta_norm = theta.norm();
  report.add_output("phi", phi.amplitudes());
  report.add_output("theta", theta.amplitudes());
  report.add_output("theta_norm", theta_norm);
  report.add_check("|theta| is 1/2", theta_norm - 0.5, tol);
  report.add_check("theta is parallel to chi_m", 1.0 - std::abs(inner(theta.normalized(), chi_m)), tol);

  const auto bell = projector(pair);
  const auto cond = conditional(rho, bell, {0, 2});
  report.add_output("rho_2_given_13", cond.conditional.matrix());
  report.add_output("probability", cond.probability);
  report.add_check("conditional photon 2 is projector(chi_m)", distance(cond.conditional.matrix(), projector(chi_m).matrix()), tol);
  report.add_check("fidelity of photon 2 with chi_m is 1", 1.0 - fidelity(cond.conditional, chi_m), tol);
  report.add_check("post-selection probability is 1/4", cond.probability - 0.25, tol);
  report.add_check("post-selection probability equals |theta|^2", cond.probability - theta_norm * theta_norm, tol);
  return report;
}

/// Two singlet pairs (1,2) and (3,4); photons 2 and 4 are found polarized
/// along m and s.  Photons 1 and 3 are left in the product of the
/// orthogonal polarizations.
inline ScenarioReport four_photon_pairs(const BlochVector& m, const BlochVector& s, double tol = kDefaultTolerance) {
  ScenarioReport report;
  report.name = "four-photon-pairs";
  report.inputs = {{"m", m}, {"s", s}};

  const auto pairs = singlet(BlochVector::z_axis());
  const auto rho = density(tensor(pairs, pairs));
  const auto chi_m = spin_state(m, 1);
  const auto chi_s = spin_state(s, 1);

  const auto cond = conditional(rho, tensor(projector(chi_m), projector(chi_s)), {1, 3});
  const auto expected = tensor(projector(orthogonal_state(chi_m)), projector(orthogonal_state(chi_s)));
  report.add_output("rho_13", cond.conditional.matrix());
  report.add_output("probability", cond.probability);
  report.add_check("photons 1,3 are in a pure state", purity(cond.conditional) - 1.0, tol);
  report.add_check("photons 1,3 factorize as chi_-m x chi_-s", distance(cond.conditional.matrix(), expected.matrix()), tol);
  report.add_check("joint filter probability is 1/4", cond.probability - 0.25, tol);

  // Photon 2 first, then photon 4 (at position 2 of the remaining factors).
  const auto first = conditional(rho, projector(chi_m), {1});
  const auto second = conditional(first.conditional, projector(chi_s), {2});
  report.add_check("sequential conditioning matches joint conditioning",
                   distance(second.conditional.matrix(), cond.conditional.matrix()), tol);
  report.add_check("sequential probabilities multiply to the joint one",
                   first.probability * second.probability - cond.probability, tol);
  return report;
}

}  // namespace cdm::scenarios
