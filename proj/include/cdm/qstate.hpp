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

// Spin-1/2 and photon-polarization states built from Bloch vectors.
//
// Photon polarization uses the same two-dimensional space as spin-1/2;
// orthogonal polarizations correspond to antipodal Bloch vectors.

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "cdm/tensor.hpp"

namespace cdm {

inline constexpr double kNormTolerance = 1e-12;

/// Unit direction n = (x, y, z).
class BlochVector {
 public:
  /// Throws InvalidState unless x² + y² + z² = 1 within 1e-12.
  BlochVector(double x, double y, double z) : v_{x, y, z} {
    const double n2 = x * x + y * y + z * z;
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kNormTolerance) {
      throw InvalidState("BlochVector: not a unit vector");
    }
  }

  /// Rescales (x, y, z) to unit length.
  static BlochVector normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidState("BlochVector: zero or non-finite direction");
    return BlochVector(Unchecked{}, x / n, y / n, z / n);
  }

  static BlochVector x_axis() { return {1.0, 0.0, 0.0}; }
  static BlochVector y_axis() { return {0.0, 1.0, 0.0}; }
  static BlochVector z_axis() { return {0.0, 0.0, 1.0}; }

  double x() const noexcept { return v_[0]; }
  double y() const noexcept { return v_[1]; }
  double z() const noexcept { return v_[2]; }

  BlochVector operator-() const { return BlochVector(Unchecked{}, -v_[0], -v_[1], -v_[2]); }

  double dot(const BlochVector& o) const noexcept { return x() * o.x() + y() * o.y() + z() * o.z(); }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  struct Unchecked {};
  BlochVector(Unchecked, double x, double y, double z) : v_{x, y, z} {}

  std::array<double, 3> v_;
};

/// Amplitude vector over a tensor product of factors.
///
/// Normalized unless built with `unnormalized`, which is reserved for
/// intermediate partial contractions.
class StateVector {
 public:
  StateVector(FactorShape shape, ComplexVector amplitudes) : StateVector(std::move(shape), std::move(amplitudes), true) {}

  static StateVector unnormalized(FactorShape shape, ComplexVector amplitudes) {
    return StateVector(std::move(shape), std::move(amplitudes), false);
  }

  /// Single two-dimensional factor.
  static StateVector qubit(Complex a, Complex b) {
    ComplexVector v(2);
    v << a, b;
    return StateVector(FactorShape{2}, std::move(v));
  }

  const FactorShape& shape() const noexcept { return shape_; }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  bool is_normalized() const noexcept { return normalized_; }
  double norm() const { return amps_.norm(); }

  /// Unit vector along this one; throws on the zero vector.
  StateVector normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw InvalidState("StateVector: cannot normalize the zero vector");
    return StateVector(shape_, amps_ / n);
  }

 private:
  StateVector(FactorShape shape, ComplexVector amplitudes, bool check) : shape_(std::move(shape)), amps_(std::move(amplitudes)), normalized_(check) {
    if (static_cast<std::size_t>(amps_.size()) != shape_.total()) {
      throw DimensionError("StateVector: amplitude count does not match the factor shape");
    }
    if (!amps_.allFinite()) throw InvalidState("StateVector: non-finite amplitude");
    if (check && std::abs(amps_.norm() - 1.0) > kNormTolerance) {
      throw InvalidState("StateVector: not normalized");
    }
  }

  FactorShape shape_;
  ComplexVector amps_;
  bool normalized_;
};

/// ⟨a|b⟩ (conjugate-linear in the first argument).
inline Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  auto shape = a.shape().concat(b.shape());
  auto amps = kron(a.amplitudes(), b.amplitudes());
  if (a.is_normalized() && b.is_normalized()) return StateVector(std::move(shape), std::move(amps));
  return StateVector::unnormalized(std::move(shape), std::move(amps));
}

/// Hermitian, unit-trace, positive semidefinite operator with a factor shape.
class DensityMatrix {
 public:
  DensityMatrix(FactorShape shape, ComplexMatrix matrix, double tol = kDefaultTolerance)
      : shape_(std::move(shape)), m_(std::move(matrix)) {
    if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != shape_.total()) {
      throw DimensionError("DensityMatrix: matrix dimension does not match the factor shape");
    }
    detail::require_finite(m_, "DensityMatrix");
    if (!is_hermitian(m_, tol)) throw InvalidState("DensityMatrix: not hermitian");
    if (!is_unit_trace(m_, tol)) throw InvalidState("DensityMatrix: trace is not 1");
    if (!is_psd(m_, tol)) throw InvalidState("DensityMatrix: not positive semidefinite");
  }

  /// I/d on `shape`.
  static DensityMatrix maximally_mixed(const FactorShape& shape) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return DensityMatrix(shape, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  }

  const FactorShape& shape() const noexcept { return shape_; }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  FactorShape shape_;
  ComplexMatrix m_;
};

/// Hermitian idempotent operator on its own factors.
class Projector {
 public:
  Projector(FactorShape shape, ComplexMatrix matrix, double tol = kDefaultTolerance)
      : shape_(std::move(shape)), m_(std::move(matrix)) {
    if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != shape_.total()) {
      throw DimensionError("Projector: matrix dimension does not match the factor shape");
    }
    detail::require_finite(m_, "Projector");
    if (!is_hermitian(m_, tol)) throw InvalidState("Projector: not hermitian");
    if (max_abs(m_ * m_ - m_) > tol) throw InvalidState("Projector: not idempotent");
  }

  static Projector identity(const FactorShape& shape) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return Projector(shape, ComplexMatrix::Identity(d, d));
  }

  const FactorShape& shape() const noexcept { return shape_; }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  /// Rank = Tr P for an orthogonal projector.
  std::size_t rank() const { return static_cast<std::size_t>(std::lround(m_.trace().real())); }

 private:
  FactorShape shape_;
  ComplexMatrix m_;
};

inline Projector tensor(const Projector& a, const Projector& b) {
  return Projector(a.shape().concat(b.shape()), kron(a.matrix(), b.matrix()));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.shape().concat(b.shape()), kron(a.matrix(), b.matrix()));
}

/// Multiplies by the global phase that makes the pivot component real and
/// nonnegative.  The pivot is the first component whose magnitude is not
/// negligible (> 1e-9 relative to the largest).
inline ComplexVector fix_phase(ComplexVector v) {
  if (v.size() == 0) return v;
  const double largest = v.cwiseAbs().maxCoeff();
  if (!(largest > 0.0)) return v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-9 * largest) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      break;
    }
  }
  return v;
}

inline StateVector fix_phase(const StateVector& s) {
  if (s.is_normalized()) return StateVector(s.shape(), fix_phase(s.amplitudes()));
  return StateVector::unnormalized(s.shape(), fix_phase(s.amplitudes()));
}

/// σ⃗·n⃗ = x σ_x + y σ_y + z σ_z.
inline ComplexMatrix pauli_dot(const BlochVector& n) {
  ComplexMatrix m(2, 2);
  m << Complex(n.z(), 0.0), Complex(n.x(), -n.y()),
       Complex(n.x(), n.y()), Complex(-n.z(), 0.0);
  return m;
}

/// Eigenvector of σ⃗·n⃗ with eigenvalue `sign` (+1 or -1).
///
/// Closed-form half-angle construction (cos θ/2, e^{iφ} sin θ/2), which stays
/// well-conditioned near n = -z.
inline StateVector spin_state(const BlochVector& n, int sign) {
  if (sign != 1 && sign != -1) throw InvalidState("spin_state: sign must be +1 or -1");
  const BlochVector d = sign > 0 ? n : -n;
  const double rho = std::hypot(d.x(), d.y());
  // rho = 2 c s; take the larger half-angle factor from z, the smaller from rho.
  double c, s;
  if (d.z() >= 0.0) {
    c = std::sqrt(0.5 * (1.0 + d.z()));
    s = rho / (2.0 * c);
  } else {
    s = std::sqrt(0.5 * (1.0 - d.z()));
    c = rho / (2.0 * s);
  }
  const Complex phase = rho > 0.0 ? Complex(d.x() / rho, d.y() / rho) : Complex(1.0, 0.0);
  ComplexVector v(2);
  v << Complex(c, 0.0), phase * s;
  v.normalize();
  return StateVector(FactorShape{2}, fix_phase(std::move(v)));
}

/// The normalized state orthogonal to a single-factor two-dimensional `psi`.
inline StateVector orthogonal_state(const StateVector& psi) {
  if (psi.shape() != FactorShape{2}) throw DimensionError("orthogonal_state: expects a single two-dimensional factor");
  if (!psi.is_normalized()) throw InvalidState("orthogonal_state: input not normalized");
  ComplexVector v(2);
  v << -std::conj(psi[1]), std::conj(psi[0]);
  return StateVector(FactorShape{2}, fix_phase(std::move(v)));
}

/// (1/√2)(χ_n⊗χ_{-n} − χ_{-n}⊗χ_n): total spin zero, antisymmetric under
/// exchange, independent of n up to a global phase.
inline StateVector singlet(const BlochVector& n) {
  const auto up = spin_state(n, 1).amplitudes();
  const auto down = spin_state(n, -1).amplitudes();
  ComplexVector v = (kron(up, down) - kron(down, up)) / std::sqrt(2.0);
  return StateVector(FactorShape{2, 2}, std::move(v));
}

/// |ψ⟩⟨ψ|.
inline Projector projector(const StateVector& psi) {
  if (!psi.is_normalized()) throw InvalidState("projector: input not normalized");
  return Projector(psi.shape(), psi.amplitudes() * psi.amplitudes().adjoint());
}

/// |ψ⟩⟨ψ| as a validated density matrix.
inline DensityMatrix density(const StateVector& psi) {
  if (!psi.is_normalized()) throw InvalidState("density: input not normalized");
  return DensityMatrix(psi.shape(), psi.amplitudes() * psi.amplitudes().adjoint());
}

inline DensityMatrix density(const Projector& p) {
  if (p.rank() != 1) throw InvalidState("density: projector is not rank one");
  return DensityMatrix(p.shape(), p.matrix());
}

/// Tr ρ², in [1/d, 1].
inline double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

/// ⟨ψ|ρ|ψ⟩, in [0, 1].
inline double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.shape() != psi.shape()) throw DimensionError("fidelity: shape mismatch");
  return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

/// Eigenvector of the largest eigenvalue of ρ, phase-fixed.  For a pure
/// state this recovers the ray ψ with ρ = |ψ⟩⟨ψ|.
inline StateVector dominant_state(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
  const auto last = rho.matrix().rows() - 1;
  ComplexVector v = solver.eigenvectors().col(last);
  v.normalize();
  return StateVector(rho.shape(), fix_phase(std::move(v)));
}

}  // namespace cdm
