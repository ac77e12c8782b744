// Copyright 2026 The pptlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPTLAB_MEANS_HPP
#define PPTLAB_MEANS_HPP

#include <cmath>
#include <string>

#include "pptlab/errors.hpp"
#include "pptlab/linalg.hpp"

namespace pptlab {

/// Weight t in [0,1] and exponent r > 0 shared by the mean-based functions.
struct MeanParams {
  double t = 0.5;
  double r = 1.0;

  MeanParams() = default;
  MeanParams(double t_in, double r_in) : t(t_in), r(r_in) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::InvalidParam, "t must lie in [0,1]");
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidParam, "r must be positive");
  }
};

namespace detail {

template <typename Real>
void require_weight(Real t, const char* op) {
  if (!(t >= Real(0) && t <= Real(1))) {
    throw Error(ErrorKind::InvalidParam, std::string(op) + ": t outside [0,1]");
  }
}

template <typename Real>
void require_same_shape(const CMatrix<Real>& a, const CMatrix<Real>& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": operand shapes differ");
  }
}

// Eigendecomposition of a PSD matrix that must be inverted.  When the smallest
// eigenvalue is below the inversion threshold the matrix is shifted by
// 1e-10 (1 + trace/n) I and decomposed again.
template <typename Real>
EigenDecomposition<Real> invertible_eig(const CMatrix<Real>& a, const char* op) {
  auto eig = hermitian_eig(a);
  const Eigen::Index n = a.rows();
  if (eig.values(n - 1) >= inverse_tolerance(std::abs(eig.values(0)))) return eig;
  const Real shift = Real(1e-10) * (Real(1) + a.trace().real() / Real(n));
  eig = hermitian_eig<Real>(hermitian_part(a) + shift * identity<Real>(n));
  // The shift is below tol_inv by construction, so the regularized matrix only
  // has to be safely positive definite.
  if (!(eig.values(n - 1) >= shift / Real(2))) {
    throw Error(ErrorKind::SingularMatrix, std::string(op) + ": matrix not invertible after regularization");
  }
  return eig;
}

}  // namespace detail

/// Weighted geometric mean A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
///
/// Computed in the eigenbasis of A: with A = V diag(d) V^*, the inner matrix is
/// diag(d^{-1/2}) V^* B V diag(d^{-1/2}).  A near-singular A is regularized
/// before inversion; B only needs to be PSD.
template <typename Real>
CMatrix<Real> geometric_mean(const CMatrix<Real>& a, const CMatrix<Real>& b, Real t) {
  detail::require_weight(t, "geometric_mean");
  detail::require_same_shape(a, b, "geometric_mean");
  detail::require_hermitian(b, "geometric_mean");
  if (t == Real(0)) {
    detail::require_hermitian(a, "geometric_mean");
    return hermitian_part(a);
  }
  const auto eig = detail::invertible_eig(a, "geometric_mean");
  const RVector<Real> root = eig.values.cwiseSqrt();
  const RVector<Real> inv_root = root.cwiseInverse();
  CMatrix<Real> inner = inv_root.template cast<Complex<Real>>().asDiagonal() *
                        (eig.vectors.adjoint() * b * eig.vectors) *
                        inv_root.template cast<Complex<Real>>().asDiagonal();
  inner = hermitian_part(inner);
  const CMatrix<Real> powered = t == Real(1) ? inner : matrix_power<Real>(inner, t);
  CMatrix<Real> outer = eig.vectors * root.template cast<Complex<Real>>().asDiagonal();
  return hermitian_part(CMatrix<Real>(outer * powered * outer.adjoint()));
}

/// (1-t) A + t B.
template <typename Real>
CMatrix<Real> arithmetic_blend(const CMatrix<Real>& a, const CMatrix<Real>& b, Real t) {
  detail::require_weight(t, "arithmetic_blend");
  detail::require_same_shape(a, b, "arithmetic_blend");
  if (t == Real(0)) return a;
  if (t == Real(1)) return b;
  return (Real(1) - t) * a + t * b;
}

/// exp((1-t) log A + t log B); near-singular arguments are regularized.
template <typename Real>
CMatrix<Real> log_euclidean(const CMatrix<Real>& a, const CMatrix<Real>& b, Real t) {
  detail::require_weight(t, "log_euclidean");
  detail::require_same_shape(a, b, "log_euclidean");
  auto log_of = [](const CMatrix<Real>& m) {
    const auto eig = detail::invertible_eig(m, "log_euclidean");
    return apply_spectral(eig, [](Real lambda) { return std::log(lambda); });
  };
  if (t == Real(0)) return matrix_exp<Real>(log_of(a));
  if (t == Real(1)) return matrix_exp<Real>(log_of(b));
  return matrix_exp<Real>((Real(1) - t) * log_of(a) + t * log_of(b));
}

/// B^{rt/2} A^{(1-t) r} B^{rt/2}.
template <typename Real>
CMatrix<Real> sandwich(const CMatrix<Real>& a, const CMatrix<Real>& b, Real t, Real r) {
  detail::require_weight(t, "sandwich");
  detail::require_same_shape(a, b, "sandwich");
  if (!(r > Real(0))) throw Error(ErrorKind::InvalidParam, "sandwich: r must be positive");
  const CMatrix<Real> outer = matrix_power<Real>(b, r * t / Real(2));
  const CMatrix<Real> middle = matrix_power<Real>(a, (Real(1) - t) * r);
  return hermitian_part(CMatrix<Real>(outer * middle * outer));
}

}  // namespace pptlab

#endif  // PPTLAB_MEANS_HPP
