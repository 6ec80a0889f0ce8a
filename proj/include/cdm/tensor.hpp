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

// Complex linear algebra over tensor-product spaces.
//
// Factor ordering is left to right and flattening is row-major (big-endian):
// for factor digits (i_0, ..., i_{k-1}) with dimensions (d_0, ..., d_{k-1})
// the global index is  sum_k i_k * prod_{j>k} d_j.  kron(a, b) places `a` on
// the leftmost factor, which makes kron and the flattening agree.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "cdm/errors.hpp"

namespace cdm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTolerance = 1e-10;

/// Ordered factor indices, e.g. {0, 2} for "photons 1 and 3".
using FactorSet = std::vector<std::size_t>;

class FactorShape {
 public:
  FactorShape() = default;
  FactorShape(std::initializer_list<std::size_t> dims) : FactorShape(std::vector<std::size_t>(dims)) {}
  explicit FactorShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (auto d : dims_) {
      if (d < 2) throw DimensionError("factor dimension must be at least 2");
    }
  }

  /// n two-dimensional factors.
  static FactorShape qubits(std::size_t n) { return FactorShape(std::vector<std::size_t>(n, 2)); }

  std::size_t size() const noexcept { return dims_.size(); }
  bool empty() const noexcept { return dims_.empty(); }
  std::size_t operator[](std::size_t k) const { return dims_.at(k); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// Total dimension (1 for the empty shape).
  std::size_t total() const noexcept {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>{});
  }

  /// Stride of factor k in the flattened index.
  std::size_t stride(std::size_t k) const {
    std::size_t s = 1;
    for (std::size_t j = k + 1; j < dims_.size(); ++j) s *= dims_[j];
    return s;
  }

  FactorShape select(const FactorSet& factors) const {
    std::vector<std::size_t> out;
    out.reserve(factors.size());
    for (auto f : factors) out.push_back(dims_.at(f));
    return FactorShape(std::move(out));
  }

  FactorShape concat(const FactorShape& other) const {
    std::vector<std::size_t> out = dims_;
    out.insert(out.end(), other.dims_.begin(), other.dims_.end());
    return FactorShape(std::move(out));
  }

  friend bool operator==(const FactorShape&, const FactorShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

namespace detail {

inline void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(op) + ": matrix is not square");
}

inline void require_finite(const ComplexMatrix& a, const char* op) {
  if (!a.allFinite()) throw InvalidState(std::string(op) + ": matrix has non-finite entries");
}

inline void validate_factor_set(const FactorSet& factors, const FactorShape& shape, const char* op) {
  std::vector<bool> seen(shape.size(), false);
  for (auto f : factors) {
    if (f >= shape.size()) throw DimensionError(std::string(op) + ": factor index out of range");
    if (seen[f]) throw DimensionError(std::string(op) + ": repeated factor index");
    seen[f] = true;
  }
}

/// Factors of `shape` not in `factors`, ascending.
inline FactorSet complement(const FactorSet& factors, std::size_t count) {
  FactorSet out;
  for (std::size_t k = 0; k < count; ++k) {
    if (std::find(factors.begin(), factors.end(), k) == factors.end()) out.push_back(k);
  }
  return out;
}

/// offsets[j] = contribution to the global flattened index of the j-th joint
/// configuration of `factors` (enumerated row-major in the listed order).
inline std::vector<std::size_t> subset_offsets(const FactorSet& factors, const FactorShape& shape) {
  std::vector<std::size_t> offsets{0};
  for (auto f : factors) {
    const std::size_t d = shape[f];
    const std::size_t s = shape.stride(f);
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * d);
    for (auto base : offsets) {
      for (std::size_t i = 0; i < d; ++i) next.push_back(base + i * s);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace detail

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_finite(a, "kron");
  detail::require_finite(b, "kron");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Lifts `p` (acting on the factors `on`, in the listed order) to the full
/// space described by `shape`, acting as identity on every other factor.
inline ComplexMatrix embed(const ComplexMatrix& p, const FactorSet& on, const FactorShape& shape) {
  detail::require_square(p, "embed");
  detail::validate_factor_set(on, shape, "embed");
  const auto sub = shape.select(on);
  if (static_cast<std::size_t>(p.rows()) != sub.total()) {
    throw DimensionError("embed: operator dimension does not match the selected factors");
  }
  const auto on_off = detail::subset_offsets(on, shape);
  const auto rest_off = detail::subset_offsets(detail::complement(on, shape.size()), shape);

  const auto n = static_cast<Eigen::Index>(shape.total());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (auto r : rest_off) {
    for (std::size_t a = 0; a < on_off.size(); ++a) {
      for (std::size_t b = 0; b < on_off.size(); ++b) {
        out(r + on_off[a], r + on_off[b]) = p(a, b);
      }
    }
  }
  return out;
}

inline Complex trace(const ComplexMatrix& a) {
  detail::require_square(a, "trace");
  return a.trace();
}

/// Traces out `traced`; the result acts on the remaining factors in their
/// original relative order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const FactorShape& shape, const FactorSet& traced) {
  detail::require_square(rho, "partial_trace");
  if (static_cast<std::size_t>(rho.rows()) != shape.total()) {
    throw DimensionError("partial_trace: matrix dimension does not match the factor shape");
  }
  detail::validate_factor_set(traced, shape, "partial_trace");
  if (traced.empty()) throw DimensionError("partial_trace: nothing to trace");
  if (traced.size() == shape.size()) throw DimensionError("partial_trace: tracing every factor, use trace()");

  const auto kept_off = detail::subset_offsets(detail::complement(traced, shape.size()), shape);
  const auto traced_off = detail::subset_offsets(traced, shape);

  const auto n = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex sum{0.0, 0.0};
      for (auto t : traced_off) sum += rho(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = sum;
    }
  }
  return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

/// Largest entry magnitude, ‖a‖_max.
inline double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTolerance) {
  detail::require_square(a, "is_hermitian");
  return max_abs(a - a.adjoint()) <= tol;
}

/// Eigenvalues of the hermitian part of `a`, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  detail::require_square(a, "hermitian_eigenvalues");
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Most negative eigenvalue (the PSD margin); a non-hermitian input is
/// judged by its hermitian part.
inline double min_eigenvalue(const ComplexMatrix& a) { return hermitian_eigenvalues(a).minCoeff(); }

inline bool is_psd(const ComplexMatrix& a, double tol = kDefaultTolerance) {
  detail::require_square(a, "is_psd");
  if (a.size() == 0) return true;
  return min_eigenvalue(a) >= -tol * max_abs(a);
}

inline bool is_unit_trace(const ComplexMatrix& a, double tol = kDefaultTolerance) {
  return std::abs(trace(a) - 1.0) <= tol;
}

}  // namespace cdm
