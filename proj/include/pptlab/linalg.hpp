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

#ifndef PPTLAB_LINALG_HPP
#define PPTLAB_LINALG_HPP

// Dense complex kernels: Jacobi eigensolver for Hermitian matrices, one-sided
// Jacobi singular values, spectral matrix functions and the polar
// decomposition. Everything is templated on the real scalar so the same code
// runs in double or extended precision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "pptlab/errors.hpp"

namespace pptlab {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using RealVector = RVector<double>;

/// Singular values or PSD eigenvalues, always sorted descending.
template <typename Real>
using Spectrum = RVector<Real>;
using SingularSpectrum = Spectrum<double>;

template <typename Real>
struct EigenDecomposition {
  RVector<Real> values;   // descending
  CMatrix<Real> vectors;  // columns are eigenvectors
};

template <typename Real>
struct PolarDecomposition {
  CMatrix<Real> unitary;
  CMatrix<Real> modulus;  // |X| = (X^* X)^{1/2}
};

struct PsdCheck {
  bool ok = false;
  double min_eig = 0.0;
  double max_abs_eig = 0.0;
};

inline constexpr int kJacobiSweepBudget = 100;

/// Scale-aware PSD threshold: 1e-9 (1 + |lambda_max|).
template <typename Real>
Real psd_tolerance(Real lambda_max_abs) {
  return Real(1e-9) * (Real(1) + lambda_max_abs);
}

/// Smallest eigenvalue accepted for inversion, logarithms and negative powers.
template <typename Real>
Real inverse_tolerance(Real lambda_max_abs) {
  return Real(1e-10) * (Real(1) + lambda_max_abs);
}

template <typename Real>
CMatrix<Real> identity(Eigen::Index n) {
  return CMatrix<Real>::Identity(n, n);
}

template <typename Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Plain h = m;
  Plain result = (h + h.adjoint()) * typename Derived::RealScalar(0.5);
  return result;
}

template <typename Real>
Real hermiticity_defect(const CMatrix<Real>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
bool all_finite(const CMatrix<Real>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

namespace detail {

template <typename Real>
void require_square_finite(const CMatrix<Real>& m, const char* op) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": expected a non-empty square matrix");
  }
  if (!all_finite(m)) {
    throw Error(ErrorKind::InvalidParam, std::string(op) + ": non-finite entry");
  }
}

template <typename Real>
void require_hermitian(const CMatrix<Real>& m, const char* op) {
  require_square_finite(m, op);
  const Real bound = Real(1e-12) * (Real(1) + m.norm());
  if (hermiticity_defect(m) > bound) {
    throw Error(ErrorKind::InvalidParam, std::string(op) + ": matrix is not Hermitian");
  }
}

// Rotation that annihilates the (p,q) entry of the Hermitian 2x2 block
// [[app, apq], [conj(apq), aqq]].  Applied on the right as W = [[c, s], [-s*conj(e), c*conj(e)]].
template <typename Real>
struct Rotation {
  Real c;
  Real s;
  Real t;
  Complex<Real> phase;  // apq / |apq|
};

template <typename Real>
Rotation<Real> make_rotation(Real app, Real aqq, Complex<Real> apq) {
  const Real mag = std::abs(apq);
  const Real theta = (aqq - app) / (Real(2) * mag);
  Real t;
  if (std::abs(theta) > Real(1) / std::numeric_limits<Real>::epsilon()) {
    t = Real(1) / (Real(2) * theta);
  } else {
    t = (theta >= Real(0) ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
  }
  const Real c = Real(1) / std::sqrt(t * t + Real(1));
  return {c, t * c, t, apq / mag};
}

// Columns p, q of m <- m * W.
template <typename Real>
void rotate_columns(CMatrix<Real>& m, Eigen::Index p, Eigen::Index q, const Rotation<Real>& rot) {
  const Complex<Real> ebar = std::conj(rot.phase);
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const Complex<Real> mp = m(k, p);
    const Complex<Real> mq = m(k, q);
    m(k, p) = rot.c * mp - rot.s * ebar * mq;
    m(k, q) = rot.s * mp + rot.c * ebar * mq;
  }
}

// Rows p, q of m <- W^* * m.
template <typename Real>
void rotate_rows(CMatrix<Real>& m, Eigen::Index p, Eigen::Index q, const Rotation<Real>& rot) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const Complex<Real> mp = m(p, k);
    const Complex<Real> mq = m(q, k);
    m(p, k) = rot.c * mp - rot.s * rot.phase * mq;
    m(q, k) = rot.s * mp + rot.c * rot.phase * mq;
  }
}

// Cyclic two-sided Jacobi on a Hermitian matrix, in place.  A pair is skipped
// once |a_pq| <= n*eps*sqrt(|a_pp a_qq|); the sweep loop ends when a full sweep
// performs no rotation.  This relative criterion keeps small eigenvalues of
// positive definite inputs accurate to working precision relative to their size.
template <typename Real>
void jacobi_hermitian(CMatrix<Real>& a, CMatrix<Real>* v) {
  const Eigen::Index n = a.rows();
  const Real eps = std::numeric_limits<Real>::epsilon() * Real(n);
  const Real tiny = std::numeric_limits<Real>::min();
  for (int sweep = 0; sweep < kJacobiSweepBudget; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex<Real> apq = a(p, q);
        const Real mag = std::abs(apq);
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        if (mag <= tiny || mag <= eps * std::sqrt(std::abs(app * aqq))) {
          continue;
        }
        rotated = true;
        const Rotation<Real> rot = make_rotation(app, aqq, apq);
        rotate_columns(a, p, q, rot);
        rotate_rows(a, p, q, rot);
        a(p, p) = app - rot.t * mag;
        a(q, q) = aqq + rot.t * mag;
        a(p, q) = Complex<Real>(0);
        a(q, p) = Complex<Real>(0);
        if (v != nullptr) rotate_columns(*v, p, q, rot);
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorKind::NonConvergence, "Jacobi eigensolver exceeded its sweep budget");
}

// One-sided (Hestenes) Jacobi: orthogonalizes the columns of g in place so
// that g = X * V with V unitary; the column norms are the singular values.
template <typename Real>
void jacobi_one_sided(CMatrix<Real>& g, CMatrix<Real>* v) {
  const Eigen::Index n = g.cols();
  const Real eps = std::numeric_limits<Real>::epsilon() * Real(std::max<Eigen::Index>(g.rows(), 1));
  const Real tiny = std::numeric_limits<Real>::min();
  for (int sweep = 0; sweep < kJacobiSweepBudget; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real alpha = g.col(p).squaredNorm();
        const Real beta = g.col(q).squaredNorm();
        const Complex<Real> gamma = g.col(p).dot(g.col(q));  // conjugates the first argument
        const Real mag = std::abs(gamma);
        if (mag <= tiny || mag <= eps * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const Rotation<Real> rot = make_rotation(alpha, beta, gamma);
        rotate_columns(g, p, q, rot);
        if (v != nullptr) rotate_columns(*v, p, q, rot);
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorKind::NonConvergence, "one-sided Jacobi exceeded its sweep budget");
}

template <typename Real>
std::vector<Eigen::Index> descending_order(const RVector<Real>& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return values(i) > values(j); });
  return order;
}

}  // namespace detail

/// Eigenvalues (descending) and eigenvectors of a Hermitian matrix.
template <typename Real>
EigenDecomposition<Real> hermitian_eig(const CMatrix<Real>& h) {
  detail::require_hermitian(h, "hermitian_eig");
  const Eigen::Index n = h.rows();
  CMatrix<Real> a = hermitian_part(h);
  CMatrix<Real> v = identity<Real>(n);
  detail::jacobi_hermitian(a, &v);
  RVector<Real> diag = a.diagonal().real();
  const auto order = detail::descending_order(diag);
  EigenDecomposition<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = diag(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// Eigenvalues only; skips accumulating the rotations.
template <typename Real>
RVector<Real> hermitian_eigenvalues(const CMatrix<Real>& h) {
  detail::require_hermitian(h, "hermitian_eigenvalues");
  CMatrix<Real> a = hermitian_part(h);
  detail::jacobi_hermitian<Real>(a, nullptr);
  RVector<Real> values = a.diagonal().real();
  std::sort(values.data(), values.data() + values.size(), std::greater<Real>());
  return values;
}

/// Descending singular values, computed by one-sided Jacobi on X directly.
template <typename Real>
Spectrum<Real> singular_values(const CMatrix<Real>& x) {
  detail::require_square_finite(x, "singular_values");
  CMatrix<Real> g = x;
  detail::jacobi_one_sided<Real>(g, nullptr);
  RVector<Real> s = g.colwise().norm().transpose();
  std::sort(s.data(), s.data() + s.size(), std::greater<Real>());
  return s;
}

/// Eigenvalues of a PSD matrix clipped at zero; equals its singular spectrum.
template <typename Real>
Spectrum<Real> psd_spectrum(const CMatrix<Real>& p) {
  return hermitian_eigenvalues(p).cwiseMax(Real(0));
}

/// V f(Lambda) V^* for a Hermitian argument.
template <typename Real, typename Fn>
CMatrix<Real> apply_spectral(const EigenDecomposition<Real>& eig, Fn&& fn) {
  const Eigen::Index n = eig.values.size();
  RVector<Real> mapped(n);
  for (Eigen::Index k = 0; k < n; ++k) mapped(k) = fn(eig.values(k));
  CMatrix<Real> scaled = eig.vectors * mapped.template cast<Complex<Real>>().asDiagonal();
  return hermitian_part(scaled * eig.vectors.adjoint());
}

/// P^p for PSD P.  Negative eigenvalues are clipped to zero first; negative
/// exponents require the spectrum to stay above the inversion threshold.
template <typename Real>
CMatrix<Real> matrix_power(const CMatrix<Real>& p, Real exponent) {
  if (!std::isfinite(exponent)) throw Error(ErrorKind::InvalidParam, "matrix_power: non-finite exponent");
  detail::require_hermitian(p, "matrix_power");
  const Eigen::Index n = p.rows();
  if (exponent == Real(0)) return identity<Real>(n);
  if (exponent == Real(1)) return hermitian_part(p);
  const auto eig = hermitian_eig(p);
  if (exponent < Real(0)) {
    const Real floor = inverse_tolerance(std::abs(eig.values(0)));
    if (eig.values(n - 1) < floor) {
      throw Error(ErrorKind::SingularMatrix, "matrix_power: negative exponent of a singular matrix");
    }
  }
  return apply_spectral(eig, [exponent](Real lambda) {
    return lambda <= Real(0) ? Real(0) : std::pow(lambda, exponent);
  });
}

template <typename Real>
CMatrix<Real> matrix_log(const CMatrix<Real>& p) {
  detail::require_hermitian(p, "matrix_log");
  const auto eig = hermitian_eig(p);
  const Eigen::Index n = p.rows();
  if (eig.values(n - 1) < inverse_tolerance(std::abs(eig.values(0)))) {
    throw Error(ErrorKind::SingularMatrix, "matrix_log: argument is numerically singular");
  }
  return apply_spectral(eig, [](Real lambda) { return std::log(lambda); });
}

template <typename Real>
CMatrix<Real> matrix_exp(const CMatrix<Real>& h) {
  return apply_spectral(hermitian_eig(h), [](Real lambda) { return std::exp(lambda); });
}

/// X = U |X| with U unitary.  For rank-deficient X the unitary factor is
/// completed on the kernel with an orthonormal complement.
template <typename Real>
PolarDecomposition<Real> polar_decompose(const CMatrix<Real>& x) {
  detail::require_square_finite(x, "polar_decompose");
  const Eigen::Index n = x.rows();
  CMatrix<Real> g = x;
  CMatrix<Real> v = identity<Real>(n);
  detail::jacobi_one_sided(g, &v);
  RVector<Real> sigma = g.colwise().norm().transpose();
  const Real cutoff = sigma.maxCoeff() * Real(n) * std::numeric_limits<Real>::epsilon();

  CMatrix<Real> left = CMatrix<Real>::Zero(n, n);
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (sigma(j) > cutoff && sigma(j) > Real(0)) {
      left.col(j) = g.col(j) / Complex<Real>(sigma(j));
      filled[static_cast<std::size_t>(j)] = true;
    }
  }
  // Gram-Schmidt the standard basis against the filled columns.
  Eigen::Index candidate = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (filled[static_cast<std::size_t>(j)]) continue;
    while (candidate < n) {
      Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1> w = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>::Unit(n, candidate);
      ++candidate;
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index k = 0; k < n; ++k) {
          if (!filled[static_cast<std::size_t>(k)]) continue;
          w -= left.col(k) * left.col(k).dot(w);
        }
      }
      const Real norm = w.norm();
      if (norm > Real(0.5)) {
        left.col(j) = w / Complex<Real>(norm);
        filled[static_cast<std::size_t>(j)] = true;
        break;
      }
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (sigma(j) <= cutoff) sigma(j) = Real(0);
  }
  PolarDecomposition<Real> out;
  out.unitary = left * v.adjoint();
  CMatrix<Real> vs = v * sigma.template cast<Complex<Real>>().asDiagonal();
  out.modulus = hermitian_part(vs * v.adjoint());
  return out;
}

/// |X| = (X^* X)^{1/2}.
template <typename Real>
CMatrix<Real> modulus(const CMatrix<Real>& x) {
  return polar_decompose(x).modulus;
}

/// PSD test against the scale-aware threshold tol * (1 + max |lambda|).
template <typename Real>
PsdCheck is_psd(const CMatrix<Real>& h, Real tol) {
  if (tol < Real(0)) throw Error(ErrorKind::InvalidParam, "is_psd: negative tolerance");
  const RVector<Real> values = hermitian_eigenvalues(h);
  const Real max_abs = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  const Real min_eig = values(values.size() - 1);
  return {min_eig >= -tol * (Real(1) + max_abs), static_cast<double>(min_eig), static_cast<double>(max_abs)};
}

}  // namespace pptlab

#endif  // PPTLAB_LINALG_HPP
