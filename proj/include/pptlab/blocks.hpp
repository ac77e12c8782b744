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

#ifndef PPTLAB_BLOCKS_HPP
#define PPTLAB_BLOCKS_HPP

#include <algorithm>
#include <string>

#include "pptlab/errors.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/means.hpp"

namespace pptlab {

/// H = [[A, X], [X^*, B]] with n x n blocks; A and B Hermitian.
template <typename Real>
struct Block2x2 {
  CMatrix<Real> a;
  CMatrix<Real> x;
  CMatrix<Real> b;

  Block2x2() = default;
  Block2x2(CMatrix<Real> a_in, CMatrix<Real> x_in, CMatrix<Real> b_in)
      : a(std::move(a_in)), x(std::move(x_in)), b(std::move(b_in)) {
    const Eigen::Index n = a.rows();
    if (n < 1 || a.cols() != n || x.rows() != n || x.cols() != n || b.rows() != n || b.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "Block2x2: blocks must share one square dimension");
    }
    detail::require_hermitian(a, "Block2x2 (A)");
    detail::require_hermitian(b, "Block2x2 (B)");
  }

  Eigen::Index dim() const { return a.rows(); }

  template <typename To>
  Block2x2<To> cast() const {
    return Block2x2<To>(a.template cast<Complex<To>>(), x.template cast<Complex<To>>(),
                        b.template cast<Complex<To>>());
  }
};

using Block = Block2x2<double>;

/// Raw eigenvalue evidence for positivity of H and of its partial transpose.
/// The extreme magnitudes are kept so the verdict can be re-adjudicated at any
/// tolerance.
struct PptCertificate {
  double h_min_eig = 0.0;
  double h_max_abs_eig = 0.0;
  double h_tau_min_eig = 0.0;
  double h_tau_max_abs_eig = 0.0;
  bool is_ppt = false;

  bool h_psd_at(double tol) const { return h_min_eig >= -tol * (1.0 + h_max_abs_eig); }
  bool h_tau_psd_at(double tol) const { return h_tau_min_eig >= -tol * (1.0 + h_tau_max_abs_eig); }
  bool holds_at(double tol) const { return h_psd_at(tol) && h_tau_psd_at(tol); }
};

template <typename Real>
CMatrix<Real> embed(const Block2x2<Real>& blk) {
  const Eigen::Index n = blk.dim();
  CMatrix<Real> h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = blk.a;
  h.topRightCorner(n, n) = blk.x;
  h.bottomLeftCorner(n, n) = blk.x.adjoint();
  h.bottomRightCorner(n, n) = blk.b;
  return h;
}

/// Quadrants of a 2n x 2n Hermitian matrix, the inverse of embed().
template <typename Real>
Block2x2<Real> split(const CMatrix<Real>& h) {
  if (h.rows() != h.cols() || h.rows() % 2 != 0 || h.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "split: expected an even square matrix");
  }
  const Eigen::Index n = h.rows() / 2;
  return Block2x2<Real>(h.topLeftCorner(n, n), h.topRightCorner(n, n), h.bottomRightCorner(n, n));
}

/// [[A, X], [X^*, B]] -> [[A, X^*], [X, B]].
template <typename Real>
Block2x2<Real> partial_transpose(const Block2x2<Real>& blk) {
  return Block2x2<Real>(blk.a, blk.x.adjoint(), blk.b);
}

template <typename Real>
PptCertificate is_ppt(const Block2x2<Real>& blk, Real tol) {
  const PsdCheck h = is_psd<Real>(embed(blk), tol);
  const PsdCheck h_tau = is_psd<Real>(embed(partial_transpose(blk)), tol);
  PptCertificate cert{h.min_eig, h.max_abs_eig, h_tau.min_eig, h_tau.max_abs_eig, false};
  cert.is_ppt = h.ok && h_tau.ok;
  return cert;
}

/// Schur-complement criterion: B - X^* A^{-1} X >= 0 (A regularized if needed).
template <typename Real>
bool schur_check(const Block2x2<Real>& blk) {
  const auto eig = detail::invertible_eig(blk.a, "schur_check");
  const RVector<Real> inv_root = eig.values.cwiseSqrt().cwiseInverse();
  const CMatrix<Real> half = inv_root.template cast<Complex<Real>>().asDiagonal() * eig.vectors.adjoint() * blk.x;
  const CMatrix<Real> complement = hermitian_part(CMatrix<Real>(blk.b - half.adjoint() * half));
  const RVector<Real> values = hermitian_eigenvalues(complement);
  const Real scale = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  return values(values.size() - 1) >= -psd_tolerance(scale);
}

/// (A #_t B, X, A #_{1-t} B).
template <typename Real>
Block2x2<Real> geodesic_block(const Block2x2<Real>& blk, Real t) {
  detail::require_weight(t, "geodesic_block");
  return Block2x2<Real>(geometric_mean<Real>(blk.a, blk.b, t), blk.x,
                        geometric_mean<Real>(blk.a, blk.b, Real(1) - t));
}

template <typename Real>
struct PolarRotation {
  Block2x2<Real> block;  // (U^* A U, |X|, B)
  CMatrix<Real> unitary;
};

/// Conjugates H by diag(U, I) where X = U |X|; the result has a PSD
/// off-diagonal block, so it is PPT whenever H is PSD.
template <typename Real>
PolarRotation<Real> polar_rotate(const Block2x2<Real>& blk) {
  const auto polar = polar_decompose(blk.x);
  CMatrix<Real> rotated = hermitian_part(CMatrix<Real>(polar.unitary.adjoint() * blk.a * polar.unitary));
  return {Block2x2<Real>(std::move(rotated), polar.modulus, blk.b), polar.unitary};
}

/// Entrywise (Schur) product.
template <typename Real>
CMatrix<Real> hadamard(const CMatrix<Real>& x, const CMatrix<Real>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "hadamard: operand shapes differ");
  }
  return x.cwiseProduct(y);
}

}  // namespace pptlab

#endif  // PPTLAB_BLOCKS_HPP
