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

#ifndef PPTLAB_MAJORIZATION_HPP
#define PPTLAB_MAJORIZATION_HPP

// Orders on singular spectra and the unitarily invariant norms used to
// realize them (Ky Fan k-norms, Schatten p-norms, gamma-weighted norms).

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pptlab/errors.hpp"
#include "pptlab/linalg.hpp"

namespace pptlab {

inline constexpr double kDefaultMajorizationTol = 1e-8;

struct MajorizationResult {
  bool holds = true;
  std::vector<double> margins;  // per k: RHS - LHS
};

namespace detail {

template <typename Real>
void require_same_length(const Spectrum<Real>& x, const Spectrum<Real>& y, const char* op) {
  if (x.size() != y.size() || x.size() == 0) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": spectra lengths differ");
  }
}

}  // namespace detail

/// Prefix sums of logarithms; log 0 is -inf and stays -inf for every longer prefix.
template <typename Real>
std::vector<Real> log_prefix_sums(const Spectrum<Real>& s) {
  std::vector<Real> out(static_cast<std::size_t>(s.size()));
  Real acc = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    acc += s(k) > Real(0) ? std::log(s(k)) : -std::numeric_limits<Real>::infinity();
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

/// RHS - LHS for one log-domain prefix comparison. LHS = -inf always passes
/// (+inf margin); RHS = -inf with a finite LHS fails (-inf margin).
template <typename Real>
Real log_margin(Real lhs, Real rhs) {
  if (lhs == -std::numeric_limits<Real>::infinity()) return std::numeric_limits<Real>::infinity();
  return rhs - lhs;
}

/// x is log-majorized (weakly, from above) by y: for every k,
/// sum_{j<=k} log x_j <= sum_{j<=k} log y_j + k * rel_tol.
template <typename Real>
MajorizationResult log_majorizes_leq(const Spectrum<Real>& x, const Spectrum<Real>& y,
                                     double rel_tol = kDefaultMajorizationTol) {
  detail::require_same_length(x, y, "log_majorizes_leq");
  const auto lhs = log_prefix_sums(x);
  const auto rhs = log_prefix_sums(y);
  MajorizationResult out;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const double margin = static_cast<double>(log_margin(lhs[k], rhs[k]));
    out.margins.push_back(margin);
    if (!(margin >= -static_cast<double>(k + 1) * rel_tol)) out.holds = false;
  }
  return out;
}

/// Prefix sums: sum_{j<=k} x_j <= sum_{j<=k} y_j + rel_tol * max(1, |sum y|).
template <typename Real>
MajorizationResult weakly_majorizes_leq(const Spectrum<Real>& x, const Spectrum<Real>& y,
                                        double rel_tol = kDefaultMajorizationTol) {
  detail::require_same_length(x, y, "weakly_majorizes_leq");
  MajorizationResult out;
  Real sx = 0;
  Real sy = 0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    sx += x(k);
    sy += y(k);
    const double margin = static_cast<double>(sy - sx);
    out.margins.push_back(margin);
    if (!(margin >= -rel_tol * std::max(1.0, std::abs(static_cast<double>(sy))))) out.holds = false;
  }
  return out;
}

/// gamma_1 >= ... >= gamma_n >= 0.
class GammaWeights {
 public:
  explicit GammaWeights(std::vector<double> gamma) : gamma_(std::move(gamma)) {
    if (gamma_.empty()) throw Error(ErrorKind::InvalidParam, "GammaWeights: empty");
    for (std::size_t j = 0; j < gamma_.size(); ++j) {
      if (!(gamma_[j] >= 0.0) || !std::isfinite(gamma_[j]) || (j > 0 && gamma_[j] > gamma_[j - 1])) {
        throw Error(ErrorKind::InvalidParam, "GammaWeights: weights must be finite, nonnegative and non-increasing");
      }
    }
  }

  std::size_t size() const { return gamma_.size(); }
  double operator[](std::size_t j) const { return gamma_[j]; }
  const std::vector<double>& values() const { return gamma_; }

 private:
  std::vector<double> gamma_;
};

template <typename Real>
Real ky_fan(const Spectrum<Real>& s, Eigen::Index k) {
  if (k < 1 || k > s.size()) throw Error(ErrorKind::IndexOutOfRange, "ky_fan: k outside [1, n]");
  return s.head(k).sum();
}

template <typename Real>
Real schatten(const Spectrum<Real>& s, double p) {
  if (std::isinf(p) && p > 0) return s.size() == 0 ? Real(0) : s(0);
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidParam, "schatten: p must be >= 1");
  if (p == 1.0) return s.sum();
  // Scale by s_1 so large exponents cannot overflow.
  const Real top = s.size() == 0 ? Real(0) : s(0);
  if (top <= Real(0)) return Real(0);
  Real acc = 0;
  for (Eigen::Index j = 0; j < s.size(); ++j) acc += std::pow(s(j) / top, Real(p));
  return top * std::pow(acc, Real(1) / Real(p));
}

template <typename Real>
Real gamma_weighted(const Spectrum<Real>& s, const GammaWeights& g) {
  if (static_cast<std::size_t>(s.size()) != g.size()) {
    throw Error(ErrorKind::DimensionMismatch, "gamma_norm: weight length differs from dimension");
  }
  Real acc = 0;
  for (Eigen::Index j = 0; j < s.size(); ++j) acc += Real(g[static_cast<std::size_t>(j)]) * s(j);
  return acc;
}

/// Sum of the k largest singular values.
template <typename Real>
Real ky_fan_norm(const CMatrix<Real>& x, Eigen::Index k) {
  if (k < 1 || k > x.rows()) throw Error(ErrorKind::IndexOutOfRange, "ky_fan_norm: k outside [1, n]");
  return ky_fan<Real>(singular_values(x), k);
}

/// (sum s_j^p)^{1/p}; p = +inf gives the spectral norm.
template <typename Real>
Real schatten_norm(const CMatrix<Real>& x, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidParam, "schatten_norm: p must be >= 1");
  return schatten<Real>(singular_values(x), p);
}

template <typename Real>
Real gamma_norm(const CMatrix<Real>& x, const GammaWeights& g) {
  if (static_cast<std::size_t>(x.rows()) != g.size()) {
    throw Error(ErrorKind::DimensionMismatch, "gamma_norm: weight length differs from dimension");
  }
  return gamma_weighted<Real>(singular_values(x), g);
}

/// A finite family of unitarily invariant norms evaluated on spectra: every
/// Ky Fan k-norm, a set of Schatten exponents and explicit gamma weights.
/// Ky Fan dominance over all k implies dominance in every unitarily invariant
/// norm, so this family stands in for the full quantifier.
struct NormFamily {
  bool ky_fan_all = true;
  std::vector<double> schatten_ps{1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
  std::vector<GammaWeights> gammas;

  struct Value {
    std::string name;
    long double value;
  };

  static std::string schatten_name(double p) {
    if (std::isinf(p)) return "schatten_inf";
    std::ostringstream os;
    os << "schatten_" << p;
    return os.str();
  }

  /// Evaluates every member on a descending spectrum.  Gamma weights whose
  /// length differs from the spectrum are skipped.
  template <typename Real>
  std::vector<Value> evaluate(const Spectrum<Real>& s) const {
    std::vector<Value> out;
    if (ky_fan_all) {
      for (Eigen::Index k = 1; k <= s.size(); ++k) {
        out.push_back({"ky_fan_" + std::to_string(k), static_cast<long double>(ky_fan<Real>(s, k))});
      }
    }
    for (double p : schatten_ps) out.push_back({schatten_name(p), static_cast<long double>(schatten<Real>(s, p))});
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      if (gammas[i].size() != static_cast<std::size_t>(s.size())) continue;
      out.push_back({"gamma_" + std::to_string(i), static_cast<long double>(gamma_weighted<Real>(s, gammas[i]))});
    }
    return out;
  }
};

}  // namespace pptlab

#endif  // PPTLAB_MAJORIZATION_HPP
