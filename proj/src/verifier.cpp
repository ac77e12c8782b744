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

#include "pptlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pptlab/means.hpp"

namespace pptlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string_view to_string(MarginKind k) {
  switch (k) {
    case MarginKind::LogPrefix: return "log_prefix";
    case MarginKind::Linear: return "linear";
    case MarginKind::Eigen: return "eigen";
  }
  return "unknown";
}

double Stage::min_normalized() const {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    if (std::isnan(e.normalized)) return e.normalized;
    out = std::min(out, e.normalized);
  }
  return out;
}

const Stage* CheckReport::stage(std::string_view name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const CheckInfo* find_check(std::string_view name) {
  for (const auto& info : kCheckRegistry) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

namespace {

using Work = long double;
using WMatrix = CMatrix<Work>;
using WSpec = Spectrum<Work>;
using Prefix = std::vector<Work>;
using NormValues = std::vector<NormFamily::Value>;

WMatrix widen(const ComplexMatrix& m) { return m.cast<Complex<Work>>(); }

WSpec sv(const WMatrix& m) { return singular_values<Work>(m); }
WSpec ps(const WMatrix& m) { return psd_spectrum<Work>(m); }

WSpec pow_spec(const WSpec& s, Work p) {
  WSpec out(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) out(j) = s(j) <= Work(0) ? Work(0) : std::pow(s(j), p);
  return out;
}

WSpec sorted_desc(WSpec s) {
  std::sort(s.data(), s.data() + s.size(), std::greater<Work>());
  return s;
}

Prefix log_prefix(const WSpec& s, Work weight = 1) {
  Prefix p = log_prefix_sums<Work>(s);
  for (auto& v : p) v *= weight;
  return p;
}

Prefix operator+(Prefix a, const Prefix& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

// Shifts a numerically singular PSD matrix just past tol_inv (plus the means
// module's epsilon), so the means never regularize again and every stage of a
// chain sees the same operand.
WMatrix strictly_positive(const WMatrix& m) {
  const auto values = hermitian_eigenvalues<Work>(m);
  const Eigen::Index n = m.rows();
  const Work floor = inverse_tolerance(std::abs(values(0)));
  if (values(n - 1) >= floor) return m;
  const Work shift = floor - values(n - 1) + Work(1e-10) * (Work(1) + m.trace().real() / Work(n));
  return hermitian_part(WMatrix(m + shift * identity<Work>(n)));
}

bool needs_regularization(const WMatrix& m) {
  const auto values = hermitian_eigenvalues<Work>(m);
  return values(values.size() - 1) < inverse_tolerance(std::abs(values(0)));
}

Stage log_stage(std::string name, const Prefix& lhs, const Prefix& rhs, bool asserted = true) {
  Stage st{std::move(name), MarginKind::LogPrefix, asserted, {}};
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const Work margin = log_margin(lhs[k], rhs[k]);
    st.entries.push_back({"k=" + std::to_string(k + 1), static_cast<double>(lhs[k]), static_cast<double>(rhs[k]),
                          static_cast<double>(margin), static_cast<double>(margin / Work(k + 1))});
  }
  return st;
}

Stage linear_stage(std::string name, bool asserted = true) {
  return Stage{std::move(name), MarginKind::Linear, asserted, {}};
}

void add_linear(Stage& st, std::string label, Work lhs, Work rhs) {
  st.entries.push_back({std::move(label), static_cast<double>(lhs), static_cast<double>(rhs),
                        static_cast<double>(rhs - lhs), 0.0});
}

Stage norm_stage(std::string name, const NormValues& lhs, const NormValues& rhs, bool asserted = true) {
  Stage st = linear_stage(std::move(name), asserted);
  for (std::size_t i = 0; i < lhs.size(); ++i) add_linear(st, lhs[i].name, lhs[i].value, rhs[i].value);
  return st;
}

NormValues square(NormValues v) {
  for (auto& x : v) x.value *= x.value;
  return v;
}

NormValues times(NormValues a, const NormValues& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i].value *= b[i].value;
  return a;
}

// Eigen-kind entry: lhs is the bound 0, rhs the minimum eigenvalue.  `relax`
// widens the tolerance by that factor.
void add_eigen(Stage& st, std::string label, const RVector<Work>& values, Work scale, Work relax = 1) {
  const Work min_eig = values(values.size() - 1);
  const Work normalized = min_eig / (Work(1) + scale) / relax;
  st.entries.push_back({std::move(label), 0.0, static_cast<double>(min_eig), static_cast<double>(min_eig),
                        static_cast<double>(normalized)});
}

Work max_abs(const RVector<Work>& values) {
  return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
}

void finalize_linear(Stage& st) {
  double scale = 0.0;
  for (const auto& e : st.entries) scale = std::max({scale, std::abs(e.lhs), std::abs(e.rhs)});
  const double floor = std::max(1e-12 * scale, std::numeric_limits<double>::min());
  for (auto& e : st.entries) {
    if (std::isinf(e.lhs) || std::isinf(e.rhs)) {
      e.normalized = e.margin;
      continue;
    }
    const double denom = std::max({std::abs(e.lhs), std::abs(e.rhs), floor});
    e.normalized = e.margin / denom;
  }
}

void conclude(CheckReport& rep) {
  double worst = std::numeric_limits<double>::infinity();
  bool nan_seen = false;
  for (auto& st : rep.stages) {
    if (st.kind == MarginKind::Linear) finalize_linear(st);
    if (!st.asserted) continue;
    const double m = st.min_normalized();
    if (std::isnan(m)) nan_seen = true;
    else worst = std::min(worst, m);
  }
  rep.min_margin = nan_seen ? std::numeric_limits<double>::quiet_NaN() : worst;
  rep.verdict = (!nan_seen && worst >= -rep.tolerance) ? Verdict::Pass : Verdict::Fail;
}

std::string family_label(const VerifyOptions& opts, Eigen::Index n) {
  std::ostringstream os;
  os << (opts.norms.ky_fan_all ? "ky_fan" : "");
  os << "+schatten{";
  for (std::size_t i = 0; i < opts.norms.schatten_ps.size(); ++i) {
    os << (i ? "," : "") << NormFamily::schatten_name(opts.norms.schatten_ps[i]).substr(9);
  }
  std::size_t gammas = 0;
  for (const auto& g : opts.norms.gammas) gammas += g.size() == static_cast<std::size_t>(n) ? 1 : 0;
  os << "}+gamma(" << gammas << ")";
  return os.str();
}

CheckReport make_report(std::string name, const VerifyOptions& opts, int dim) {
  CheckReport rep;
  rep.check_name = std::move(name);
  rep.tolerance = opts.tol;
  rep.params.dim = dim;
  return rep;
}

template <typename Fn>
CheckReport guarded(CheckReport rep, Fn&& body) {
  try {
    body(rep);
    conclude(rep);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix && e.kind() != ErrorKind::NonConvergence) throw;
    rep.verdict = Verdict::Inconclusive;
    rep.min_margin = std::numeric_limits<double>::quiet_NaN();
    rep.note = e.what();
  }
  return rep;
}

void require_hermitian_input(const ComplexMatrix& m, const char* op) {
  detail::require_hermitian<double>(m, op);
}

// The four links shared by the block checks and the rotated Gram-sum block.
void append_block_chain(CheckReport& rep, const WMatrix& a, const WMatrix& x, const WMatrix& b, Work t, Work r,
                          const std::string& prefix) {
  const Prefix q0 = log_prefix(sv(x), Work(2) * r);
  const Prefix q1 = log_prefix(ps(geometric_mean<Work>(a, b, t)), r) +
                    log_prefix(ps(geometric_mean<Work>(a, b, Work(1) - t)), r);
  const Prefix q2 = log_prefix(ps(log_euclidean<Work>(a, b, t)), r) +
                    log_prefix(ps(log_euclidean<Work>(a, b, Work(1) - t)), r);
  const Prefix q3 = log_prefix(ps(sandwich<Work>(a, b, t, r))) + log_prefix(ps(sandwich<Work>(b, a, t, r)));
  const WMatrix p_t = matrix_power<Work>(a, (Work(1) - t) * r) * matrix_power<Work>(b, t * r);
  const WMatrix p_1t = matrix_power<Work>(a, t * r) * matrix_power<Work>(b, (Work(1) - t) * r);
  const Prefix q4 = log_prefix(sv(p_t)) + log_prefix(sv(p_1t));
  rep.stages.push_back(log_stage(prefix + "X_vs_geometric", q0, q1));
  rep.stages.push_back(log_stage(prefix + "geometric_vs_log_euclidean", q1, q2));
  rep.stages.push_back(log_stage(prefix + "log_euclidean_vs_sandwich", q2, q3));
  rep.stages.push_back(log_stage(prefix + "sandwich_vs_product", q3, q4));
}

std::vector<std::pair<WMatrix, WMatrix>> widen_pairs(const std::vector<MatrixPair>& pairs, const char* op) {
  if (pairs.empty()) throw Error(ErrorKind::InvalidParam, std::string(op) + ": needs at least one pair");
  const Eigen::Index n = pairs.front().first.rows();
  std::vector<std::pair<WMatrix, WMatrix>> out;
  for (const auto& [a, b] : pairs) {
    if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": pair dimensions differ");
    }
    out.emplace_back(widen(a), widen(b));
  }
  return out;
}

}  // namespace

CheckReport check_lemma_geodesic_ppt(const Block& blk, double t, const VerifyOptions& opts) {
  const MeanParams params(t, 1.0);
  CheckReport rep = make_report("lemma_geodesic_ppt", opts, static_cast<int>(blk.dim()));
  rep.params.t = t;
  return guarded(std::move(rep), [&](CheckReport& r) {
    const auto w = blk.cast<Work>();
    // Boundary-singular inputs go through the regularized means; the PPT test is
    // then judged at a 10x relaxed tolerance.
    const bool boundary = needs_regularization(w.a) || needs_regularization(w.b);
    const Work relax = boundary ? Work(10) : Work(1);
    if (boundary) r.note = "regularized singular diagonal block; tolerance relaxed 10x";
    const auto g = geodesic_block<Work>(w, Work(t));
    const auto h = hermitian_eigenvalues<Work>(embed(g));
    const auto h_tau = hermitian_eigenvalues<Work>(embed(partial_transpose(g)));
    Stage st{"geodesic_block_ppt", MarginKind::Eigen, true, {}};
    add_eigen(st, "min_eig(G)", h, max_abs(h), relax);
    add_eigen(st, "min_eig(G^tau)", h_tau, max_abs(h_tau), relax);
    r.stages.push_back(std::move(st));
  });
}

CheckReport check_log_majorization_chain(const Block& blk, double t, double r, const VerifyOptions& opts) {
  const MeanParams params(t, r);
  CheckReport rep = make_report("log_majorization_chain", opts, static_cast<int>(blk.dim()));
  rep.params.t = t;
  rep.params.r = r;
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto w = blk.cast<Work>();
    append_block_chain(out, strictly_positive(w.a), w.x, strictly_positive(w.b), Work(t), Work(r), "");
  });
}

CheckReport check_norm_inequality(const Block& blk, double t, double r, const VerifyOptions& opts) {
  const MeanParams params(t, r);
  CheckReport rep = make_report("norm_inequality", opts, static_cast<int>(blk.dim()));
  rep.params.t = t;
  rep.params.r = r;
  rep.params.family = family_label(opts, blk.dim());
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto w = blk.cast<Work>();
    const WMatrix a = strictly_positive(w.a);
    const WMatrix b = strictly_positive(w.b);
    const Work tw = t;
    const Work rw = r;
    const WSpec s_x = sv(w.x);
    const WSpec s_t = ps(geometric_mean<Work>(a, b, tw));
    const WSpec s_1t = ps(geometric_mean<Work>(a, b, Work(1) - tw));
    const auto& fam = opts.norms;
    const NormValues lhs = square(fam.evaluate<Work>(pow_spec(s_x, rw)));
    const NormValues rhs = times(fam.evaluate<Work>(pow_spec(s_t, rw)), fam.evaluate<Work>(pow_spec(s_1t, rw)));
    out.stages.push_back(norm_stage("norm_bound", lhs, rhs));
    const WSpec s_mid = ps(geometric_mean<Work>(a, b, Work(0.5)));
    out.stages.push_back(norm_stage("corollary_X_vs_geometric_mean", fam.evaluate<Work>(s_x), fam.evaluate<Work>(s_mid)));
    const NormValues rhs_half =
        times(fam.evaluate<Work>(pow_spec(s_t, rw / 2)), fam.evaluate<Work>(pow_spec(s_1t, rw / 2)));
    out.stages.push_back(norm_stage("half_exponent_variant", lhs, rhs_half, /*asserted=*/false));
  });
}

CheckReport check_half_index(const Block& blk, double t, const VerifyOptions& opts) {
  const MeanParams params(t, 1.0);
  CheckReport rep = make_report("half_index", opts, static_cast<int>(blk.dim()));
  rep.params.t = t;
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto w = blk.cast<Work>();
    const WMatrix a = strictly_positive(w.a);
    const WMatrix b = strictly_positive(w.b);
    const Work tw = t;
    const WSpec s_x = sv(w.x);
    const WMatrix geodesic_avg =
        (geometric_mean<Work>(a, b, tw) + geometric_mean<Work>(a, b, Work(1) - tw)) * Work(0.5);
    const WSpec s_geo = ps(geodesic_avg);
    const WSpec s_arith = ps(WMatrix((w.a + w.b) * Work(0.5)));
    const WSpec s_gm = ps(geometric_mean<Work>(a, b, Work(0.5)));
    auto bound_stage = [&](std::string name, const WSpec& bound) {
      Stage st = linear_stage(std::move(name));
      for (Eigen::Index j = 1; j <= s_x.size(); ++j) {
        const int idx = half_index(static_cast<int>(j));
        add_linear(st, "j=" + std::to_string(j) + "->" + std::to_string(idx), s_x(j - 1), bound(idx - 1));
      }
      return st;
    };
    out.stages.push_back(bound_stage("geodesic_average", s_geo));
    out.stages.push_back(bound_stage("arithmetic_mean", s_arith));
    out.stages.push_back(bound_stage("geometric_mean", s_gm));
  });
}

CheckReport check_amgm(const ComplexMatrix& a, const ComplexMatrix& b, double t, const VerifyOptions& opts) {
  const MeanParams params(t, 1.0);
  detail::require_same_shape<double>(a, b, "check_amgm");
  CheckReport rep = make_report("amgm", opts, static_cast<int>(a.rows()));
  rep.params.t = t;
  return guarded(std::move(rep), [&](CheckReport& out) {
    const WMatrix wa = widen(a);
    const WMatrix wb = widen(b);
    const WMatrix blend = arithmetic_blend<Work>(wa, wb, Work(t));
    const WMatrix diff = hermitian_part(WMatrix(blend - geometric_mean<Work>(wa, wb, Work(t))));
    const auto values = hermitian_eigenvalues<Work>(diff);
    const auto blend_values = hermitian_eigenvalues<Work>(blend);
    Stage st{"blend_minus_mean_psd", MarginKind::Eigen, true, {}};
    add_eigen(st, "min_eig((1-t)A+tB - A#tB)", values, max_abs(blend_values));
    out.stages.push_back(std::move(st));
  });
}

CheckReport check_bhatia_grover(const ComplexMatrix& a, const ComplexMatrix& b, double t, double r,
                                const VerifyOptions& opts) {
  const MeanParams params(t, r);
  detail::require_same_shape<double>(a, b, "check_bhatia_grover");
  CheckReport rep = make_report("bhatia_grover", opts, static_cast<int>(a.rows()));
  rep.params.t = t;
  rep.params.r = r;
  return guarded(std::move(rep), [&](CheckReport& out) {
    const WMatrix wa = strictly_positive(widen(a));
    const WMatrix wb = strictly_positive(widen(b));
    const Work tw = t;
    const Work rw = r;
    const Prefix q1 = log_prefix(ps(geometric_mean<Work>(wa, wb, tw)), rw);
    const Prefix q2 = log_prefix(ps(log_euclidean<Work>(wa, wb, tw)), rw);
    const Prefix q3 = log_prefix(ps(sandwich<Work>(wa, wb, tw, rw)));
    const Prefix q4 = log_prefix(sv(WMatrix(matrix_power<Work>(wa, (Work(1) - tw) * rw) * matrix_power<Work>(wb, tw * rw))));
    out.stages.push_back(log_stage("geometric_vs_log_euclidean", q1, q2));
    out.stages.push_back(log_stage("log_euclidean_vs_sandwich", q2, q3));
    out.stages.push_back(log_stage("sandwich_vs_product", q3, q4));
  });
}

CheckReport check_audenaert_chain(const std::vector<MatrixPair>& pairs, const VerifyOptions& opts) {
  const auto wp = widen_pairs(pairs, "check_audenaert_chain");
  const Eigen::Index n = wp.front().first.rows();
  CheckReport rep = make_report("audenaert_chain", opts, static_cast<int>(n));
  rep.params.m = static_cast<int>(pairs.size());
  rep.params.family = family_label(opts, n);
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto& fam = opts.norms;
    WMatrix sum_a = WMatrix::Zero(n, n);
    WMatrix sum_b = WMatrix::Zero(n, n);
    WMatrix sum_ab = WMatrix::Zero(n, n);
    for (const auto& [a, b] : wp) {
      sum_a += a;
      sum_b += b;
      sum_ab += a * b;
    }
    sum_a = strictly_positive(hermitian_part(sum_a));
    sum_b = strictly_positive(hermitian_part(sum_b));
    // sum_j (A_j^{1/p} B_j^{1/p}) for p = 1, 2, 3.
    auto root_sum = [&](Work p) {
      WMatrix acc = WMatrix::Zero(n, n);
      for (const auto& [a, b] : wp) acc += matrix_power<Work>(a, Work(1) / p) * matrix_power<Work>(b, Work(1) / p);
      return acc;
    };
    const WSpec s_sum_ab = sv(sum_ab);
    const NormValues v0 = fam.evaluate<Work>(s_sum_ab);
    const NormValues v1 = fam.evaluate<Work>(pow_spec(sv(root_sum(2)), 2));
    const NormValues v2 = fam.evaluate<Work>(pow_spec(ps(geometric_mean<Work>(sum_a, sum_b, Work(0.5))), 2));
    const NormValues v3 = fam.evaluate<Work>(pow_spec(ps(log_euclidean<Work>(sum_a, sum_b, Work(0.5))), 2));
    const NormValues v4 = fam.evaluate<Work>(ps(sandwich<Work>(sum_a, sum_b, Work(0.5), Work(2))));
    const NormValues v5 = fam.evaluate<Work>(sv(WMatrix(sum_a * sum_b)));
    out.stages.push_back(norm_stage("sum_products_vs_root_sum_squared", v0, v1));
    out.stages.push_back(norm_stage("root_sum_squared_vs_geometric_mean_squared", v1, v2));
    out.stages.push_back(norm_stage("geometric_mean_squared_vs_log_euclidean_squared", v2, v3));
    out.stages.push_back(norm_stage("log_euclidean_squared_vs_sandwich", v3, v4));
    out.stages.push_back(norm_stage("sandwich_vs_product", v4, v5));

    for (int r : {2, 3}) {
      const Work rw = r;
      WMatrix pa = WMatrix::Zero(n, n);
      WMatrix pb = WMatrix::Zero(n, n);
      for (const auto& [a, b] : wp) {
        pa += matrix_power<Work>(a, Work(2) / rw);
        pb += matrix_power<Work>(b, Work(2) / rw);
      }
      pa = strictly_positive(hermitian_part(pa));
      pb = strictly_positive(hermitian_part(pb));
      const std::string tag = "r" + std::to_string(r) + ":";
      const NormValues a_r = fam.evaluate<Work>(pow_spec(sv(root_sum(rw)), rw));
      const NormValues b_r = fam.evaluate<Work>(pow_spec(ps(geometric_mean<Work>(pa, pb, Work(0.5))), rw));
      const NormValues c_r = fam.evaluate<Work>(pow_spec(ps(log_euclidean<Work>(pa, pb, Work(0.5))), rw));
      const NormValues d_r = fam.evaluate<Work>(ps(sandwich<Work>(pa, pb, Work(0.5), rw)));
      out.stages.push_back(norm_stage(tag + "root_sum_vs_geometric_mean", a_r, b_r));
      out.stages.push_back(norm_stage(tag + "geometric_mean_vs_log_euclidean", b_r, c_r));
      out.stages.push_back(norm_stage(tag + "log_euclidean_vs_sandwich", c_r, d_r));
    }
    for (int r : {1, 2, 3}) {
      const NormValues rhs = fam.evaluate<Work>(pow_spec(sv(root_sum(Work(r))), Work(r)));
      out.stages.push_back(norm_stage("convexity_r" + std::to_string(r), v0, rhs));
    }
  });
}

CheckReport check_polar_sum_chain(const std::vector<MatrixPair>& pairs, double r, const VerifyOptions& opts) {
  const MeanParams params(0.5, r);
  const auto wp = widen_pairs(pairs, "check_polar_sum_chain");
  const Eigen::Index n = wp.front().first.rows();
  CheckReport rep = make_report("polar_sum_chain", opts, static_cast<int>(n));
  rep.params.m = static_cast<int>(pairs.size());
  rep.params.r = r;
  rep.params.t = 0.5;
  rep.params.family = family_label(opts, n);
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto& fam = opts.norms;
    WMatrix cross = WMatrix::Zero(n, n);
    WMatrix gram_a = WMatrix::Zero(n, n);
    WMatrix gram_b = WMatrix::Zero(n, n);
    for (const auto& [a, b] : wp) {
      cross += a.adjoint() * b;
      gram_a += a.adjoint() * a;
      gram_b += b.adjoint() * b;
    }
    gram_a = hermitian_part(gram_a);
    gram_b = strictly_positive(hermitian_part(gram_b));
    const auto polar = polar_decompose<Work>(cross);
    const WMatrix& u = polar.unitary;
    const WMatrix rotated = strictly_positive(hermitian_part(WMatrix(u.adjoint() * gram_a * u)));

    const Block2x2<Work> blk(rotated, polar.modulus, gram_b);
    const auto h = hermitian_eigenvalues<Work>(embed(blk));
    Stage cert{"rotated_block_ppt", MarginKind::Eigen, true, {}};
    add_eigen(cert, "min_eig(H_rot)", h, max_abs(h));
    out.stages.push_back(std::move(cert));

    const NormValues v0 = fam.evaluate<Work>(pow_spec(sv(cross), 2));
    const NormValues v1 = fam.evaluate<Work>(pow_spec(ps(geometric_mean<Work>(rotated, gram_b, Work(0.5))), 2));
    const NormValues v2 = fam.evaluate<Work>(ps(sandwich<Work>(rotated, gram_b, Work(0.5), Work(2))));
    // s(G_A U G_B) = s(U^* G_A U G_B); using the rotated operand keeps the
    // regularization consistent with the other stages.
    const NormValues v3 = fam.evaluate<Work>(sv(WMatrix(rotated * gram_b)));
    out.stages.push_back(norm_stage("modulus_squared_vs_geometric_mean_squared", v0, v1));
    out.stages.push_back(norm_stage("geometric_mean_squared_vs_sandwich", v1, v2));
    out.stages.push_back(norm_stage("sandwich_vs_rotated_product", v2, v3));

    append_block_chain(out, rotated, polar.modulus, gram_b, Work(0.5), Work(r), "rotated:");
  });
}

CheckReport check_sum_power(const ComplexMatrix& a, const ComplexMatrix& b, double r, const VerifyOptions& opts) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidParam, "check_sum_power: r must be positive");
  detail::require_same_shape<double>(a, b, "check_sum_power");
  CheckReport rep = make_report("sum_power", opts, static_cast<int>(a.rows()));
  rep.params.r = r;
  return guarded(std::move(rep), [&](CheckReport& out) {
    const Eigen::Index n = a.rows();
    const WMatrix wa = widen(a);
    const WMatrix wb = widen(b);
    const Work rw = r;
    const WMatrix eye = identity<Work>(n);
    const WMatrix sum = wa + wb;
    const Prefix lhs = log_prefix(sv(sum), rw);

    const WMatrix ia = hermitian_part(WMatrix(eye + wa.adjoint() * wa));
    const WMatrix ib = hermitian_part(WMatrix(eye + wb.adjoint() * wb));
    const Prefix factors = log_prefix(ps(ia), rw / 2) + log_prefix(ps(ib), rw / 2);

    // [[I + A A^*, A + B], [(A + B)^*, I + B^* B]] is PSD; rotating by the polar
    // factor of A + B makes it PPT.
    const auto polar = polar_decompose<Work>(sum);
    const WMatrix p = hermitian_part(WMatrix(polar.unitary.adjoint() * (eye + wa * wa.adjoint()) * polar.unitary));
    const Prefix mean = log_prefix(ps(geometric_mean<Work>(p, ib, Work(0.5))), rw);
    out.stages.push_back(log_stage("sum_vs_rotated_mean", lhs, mean));
    out.stages.push_back(log_stage("rotated_mean_vs_factors", mean, factors));
    out.stages.push_back(log_stage("sum_vs_factors", lhs, factors));

    const bool aujla_range = r >= 1.0 && r <= 2.0;
    Prefix aujla;
    if (aujla_range) {
      const WMatrix ja = eye + matrix_power<Work>(modulus<Work>(wa), rw);
      const WMatrix jb = eye + matrix_power<Work>(modulus<Work>(wb), rw);
      aujla = log_prefix(ps(ja)) + log_prefix(ps(jb));
      out.stages.push_back(log_stage("factors_vs_aujla", factors, aujla));
      out.stages.push_back(log_stage("sum_vs_aujla", lhs, aujla));
    } else {
      out.note = "r outside [1,2]: Aujla-form stages not applicable";
    }

    const bool hermitian = hermiticity_defect<double>(a) <= 1e-12 * (1.0 + a.norm()) &&
                           hermiticity_defect<double>(b) <= 1e-12 * (1.0 + b.norm());
    if (hermitian) {
      const WMatrix ha = hermitian_part(WMatrix(eye + wa * wa));
      const WMatrix hb = hermitian_part(WMatrix(eye + wb * wb));
      const Prefix h1 = log_prefix(ps(geometric_mean<Work>(ha, hb, Work(0.5))), rw);
      const Prefix h2 = log_prefix(ps(sandwich<Work>(ha, hb, Work(0.5), rw)));
      const Prefix h3 = log_prefix(ps(matrix_power<Work>(ha, rw / 2))) + log_prefix(ps(matrix_power<Work>(hb, rw / 2)));
      out.stages.push_back(log_stage("hermitian:sum_vs_mean", lhs, h1));
      out.stages.push_back(log_stage("hermitian:mean_vs_sandwich", h1, h2));
      out.stages.push_back(log_stage("hermitian:sandwich_vs_factors", h2, h3));
      if (aujla_range) out.stages.push_back(log_stage("hermitian:factors_vs_aujla", h3, aujla));
    }
  });
}

CheckReport check_hadamard_pair(const ComplexMatrix& a, const ComplexMatrix& b, const VerifyOptions& opts) {
  require_hermitian_input(a, "check_hadamard_pair");
  require_hermitian_input(b, "check_hadamard_pair");
  detail::require_same_shape<double>(a, b, "check_hadamard_pair");
  CheckReport rep = make_report("hadamard_pair", opts, static_cast<int>(a.rows()));
  rep.params.family = family_label(opts, a.rows());
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto& fam = opts.norms;
    const Eigen::Index n = a.rows();
    const WMatrix wa = hermitian_part(widen(a));
    const WMatrix wb = hermitian_part(widen(b));
    const WMatrix had = hadamard<Work>(wa, wb);
    const WMatrix a2 = hermitian_part(WMatrix(wa * wa));
    const WMatrix b2 = hermitian_part(WMatrix(wb * wb));
    const RVector<Work> d1 = a2.diagonal().real().cwiseMax(Work(0));
    const RVector<Work> d2 = b2.diagonal().real().cwiseMax(Work(0));
    const WSpec s_had = sv(had);
    const WSpec s_prod = sorted_desc(d1.cwiseProduct(d2));

    out.stages.push_back(log_stage("hadamard_prefix", log_prefix(s_had, 2), log_prefix(s_prod)));
    const Work floor1 = inverse_tolerance(d1.maxCoeff());
    const Work floor2 = inverse_tolerance(d2.maxCoeff());
    if (d1.minCoeff() >= floor1 && d2.minCoeff() >= floor2) {
      const WMatrix dm1 = d1.cast<Complex<Work>>().asDiagonal();
      const WMatrix dm2 = d2.cast<Complex<Work>>().asDiagonal();
      const Prefix mean = log_prefix(ps(geometric_mean<Work>(dm1, dm2, Work(0.5))), 2);
      out.stages.push_back(log_stage("hadamard_vs_diagonal_mean", log_prefix(s_had, 2), mean));
      out.stages.push_back(log_stage("diagonal_mean_vs_product", mean, log_prefix(s_prod)));
    } else {
      out.note = "zero diagonal in I o A^2 or I o B^2: mean stages skipped";
    }

    const NormValues n0 = fam.evaluate<Work>(pow_spec(s_had, 2));
    const NormValues n1 = fam.evaluate<Work>(s_prod);
    const NormValues n2 = times(fam.evaluate<Work>(sorted_desc(d1)), fam.evaluate<Work>(sorted_desc(d2)));
    const NormValues n3 = times(fam.evaluate<Work>(ps(a2)), fam.evaluate<Work>(ps(b2)));
    const NormValues n4 = square(times(fam.evaluate<Work>(sv(wa)), fam.evaluate<Work>(sv(wb))));
    out.stages.push_back(norm_stage("modulus_squared_vs_diagonal_product", n0, n1));
    out.stages.push_back(norm_stage("diagonal_product_vs_product_of_norms", n1, n2));
    out.stages.push_back(norm_stage("diagonal_vs_squares", n2, n3));
    out.stages.push_back(norm_stage("squares_vs_norms_squared", n3, n4));
    (void)n;
  });
}

CheckReport check_hadamard_multi(const std::vector<ComplexMatrix>& mats, const VerifyOptions& opts) {
  if (mats.empty()) throw Error(ErrorKind::InvalidParam, "check_hadamard_multi: needs at least one matrix");
  const Eigen::Index n = mats.front().rows();
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "check_hadamard_multi: shapes differ");
  }
  CheckReport rep = make_report("hadamard_multi", opts, static_cast<int>(n));
  rep.params.m = static_cast<int>(mats.size());
  rep.params.family = family_label(opts, n);
  return guarded(std::move(rep), [&](CheckReport& out) {
    const auto& fam = opts.norms;
    WMatrix prod = WMatrix::Ones(n, n);
    WMatrix gram = WMatrix::Ones(n, n);
    for (const auto& m : mats) {
      const WMatrix w = widen(m);
      prod = hadamard<Work>(prod, w);
      gram = hadamard<Work>(gram, WMatrix(w.adjoint() * w));
    }
    gram = hermitian_part(gram);
    const WSpec s_prod = sv(prod);
    const WSpec s_gram = ps(gram);

    const Block2x2<Work> blk(identity<Work>(n), modulus<Work>(prod), gram);
    const auto h = hermitian_eigenvalues<Work>(embed(blk));
    Stage cert{"modulus_block_psd", MarginKind::Eigen, true, {}};
    add_eigen(cert, "min_eig([[I,|C|],[|C|,G]])", h, max_abs(h));
    out.stages.push_back(std::move(cert));
    out.stages.push_back(log_stage("hadamard_prefix", log_prefix(s_prod, 2), log_prefix(s_gram)));
    out.stages.push_back(
        norm_stage("modulus_squared_vs_gram_product", fam.evaluate<Work>(pow_spec(s_prod, 2)), fam.evaluate<Work>(s_gram)));
  });
}

namespace {

Block block_of(const CheckInput& in) {
  if (in.matrices.size() != 3) throw Error(ErrorKind::InvalidParam, in.check + ": expected matrices [A, X, B]");
  return Block(in.matrices[0], in.matrices[1], in.matrices[2]);
}

std::vector<MatrixPair> pairs_of(const CheckInput& in) {
  if (in.matrices.empty() || in.matrices.size() % 2 != 0) {
    throw Error(ErrorKind::InvalidParam, in.check + ": expected an even number of matrices");
  }
  std::vector<MatrixPair> out;
  for (std::size_t i = 0; i < in.matrices.size(); i += 2) out.emplace_back(in.matrices[i], in.matrices[i + 1]);
  return out;
}

void require_count(const CheckInput& in, std::size_t count) {
  if (in.matrices.size() != count) {
    throw Error(ErrorKind::InvalidParam, in.check + ": expected " + std::to_string(count) + " matrices");
  }
}

}  // namespace

CheckReport run_check(const CheckInput& in, const VerifyOptions& opts) {
  const std::string& c = in.check;
  if (c == "lemma_geodesic_ppt") return check_lemma_geodesic_ppt(block_of(in), in.t, opts);
  if (c == "log_majorization_chain") return check_log_majorization_chain(block_of(in), in.t, in.r, opts);
  if (c == "norm_inequality") return check_norm_inequality(block_of(in), in.t, in.r, opts);
  if (c == "half_index") return check_half_index(block_of(in), in.t, opts);
  if (c == "amgm") {
    require_count(in, 2);
    return check_amgm(in.matrices[0], in.matrices[1], in.t, opts);
  }
  if (c == "bhatia_grover") {
    require_count(in, 2);
    return check_bhatia_grover(in.matrices[0], in.matrices[1], in.t, in.r, opts);
  }
  if (c == "audenaert_chain") return check_audenaert_chain(pairs_of(in), opts);
  if (c == "polar_sum_chain") return check_polar_sum_chain(pairs_of(in), in.r, opts);
  if (c == "sum_power") {
    require_count(in, 2);
    return check_sum_power(in.matrices[0], in.matrices[1], in.r, opts);
  }
  if (c == "hadamard_pair") {
    require_count(in, 2);
    return check_hadamard_pair(in.matrices[0], in.matrices[1], opts);
  }
  if (c == "hadamard_multi") return check_hadamard_multi(in.matrices, opts);
  throw Error(ErrorKind::InvalidParam, "unknown check '" + c + "'");
}

}  // namespace pptlab
