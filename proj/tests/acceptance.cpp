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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pptlab/campaign.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/report_io.hpp"
#include "pptlab/sampling.hpp"
#include "pptlab/verifier.hpp"

namespace {

using pptlab::Block;
using pptlab::CheckReport;
using pptlab::ComplexMatrix;
using C = std::complex<double>;

constexpr double kTol = 1e-8;          // campaign tolerance, every suite
constexpr double kScalarTol = 1e-12;   // closed-form agreement at n = 1
constexpr double kInconclusiveRate = 0.01;
constexpr double kBellMargin = -0.4;
constexpr double kReconstruction = 1e-10;
constexpr double kInvariance = 1e-10;
constexpr std::uint64_t kSeed = 20260101;

// Collects failures of one criterion; `fail` keeps the first few messages.
struct Tally {
  long checked = 0;
  long failed = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what;
  }
  std::string summary() const {
    std::ostringstream os;
    os << checked << " assertions, " << failed << " failed";
    if (failed) os << "; first: " << first;
    return os.str();
  }
};

std::string str(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool close_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

const pptlab::Comparison* entry(const CheckReport& rep, const std::string& stage, const std::string& label) {
  const auto* st = rep.stage(stage);
  if (!st) return nullptr;
  for (const auto& e : st->entries) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

// Campaign aggregate: no failures, few inconclusive, and every asserted stage
// within tolerance.
void expect_campaign(Tally& t, const pptlab::CampaignResult& res, const std::vector<std::string>& stages = {}) {
  for (const auto& a : res.checks) {
    t.expect(a.trials == a.passes + a.failures + a.inconclusive, a.check + ": counts do not add up");
    t.expect(a.failures == 0, a.check + ": " + std::to_string(a.failures) + " failures, worst " + str(a.min_margin));
    t.expect(a.inconclusive < kInconclusiveRate * static_cast<double>(a.trials),
             a.check + ": inconclusive " + std::to_string(a.inconclusive));
    for (const auto& want : stages) {
      bool seen = false;
      for (const auto& s : a.stages) {
        if (s.name != want) continue;
        seen = true;
        t.expect(s.asserted && s.min_normalized >= -kTol, a.check + "/" + want + " margin " + str(s.min_normalized));
      }
      t.expect(seen, a.check + ": stage " + want + " missing");
    }
  }
}

std::string campaign_note(const pptlab::CampaignResult& res) {
  long trials = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& a : res.checks) {
    trials += a.trials;
    worst = std::min(worst, a.min_margin);
  }
  return std::to_string(trials) + " trials, worst margin " + str(worst) + "; ";
}

pptlab::Campaign default_campaign(std::vector<std::string> checks) {
  pptlab::Campaign c;
  c.seed = kSeed;
  c.checks = std::move(checks);
  return c;
}

// ---------------------------------------------------------------------------

std::string criterion1(Tally& t) {
  auto c = default_campaign({"lemma_geodesic_ppt"});
  c.trials_per_cell = 500;
  const auto res = pptlab::run_verify_campaign(c);
  expect_campaign(t, res, {"geodesic_block_ppt"});
  return campaign_note(res);
}

std::string criterion2(Tally& t) {
  auto c = default_campaign({"log_majorization_chain"});
  c.trials_per_cell = 500;
  const auto res = pptlab::run_verify_campaign(c);
  expect_campaign(t, res, {"X_vs_geometric", "geometric_vs_log_euclidean", "log_euclidean_vs_sandwich",
                           "sandwich_vs_product"});

  // n = 1: the last three links are equalities, the first is x^{2r} <= (ab)^r,
  // an equality on the boundary |x|^2 = ab.
  std::mt19937_64 rng(kSeed);
  std::lognormal_distribution<double> pos(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = pos(rng), b = pos(rng);
    const bool boundary = i % 5 == 0;
    const double mod = std::sqrt(a * b) * (boundary ? 1.0 : unit(rng));
    const C x = std::polar(mod, 2 * M_PI * unit(rng));
    const Block blk(ComplexMatrix::Constant(1, 1, a), ComplexMatrix::Constant(1, 1, x), ComplexMatrix::Constant(1, 1, b));
    for (double tw : c.t_grid) {
      for (double r : c.r_grid) {
        const auto rep = pptlab::check_log_majorization_chain(blk, tw, r);
        const auto* first = entry(rep, "X_vs_geometric", "k=1");
        t.expect(first && std::abs(first->margin - r * (std::log(a * b) - 2 * std::log(mod))) <= kScalarTol,
                 "scalar first link");
        if (boundary) t.expect(first && std::abs(first->margin) <= kScalarTol, "scalar boundary equality");
        for (const char* s : {"geometric_vs_log_euclidean", "log_euclidean_vs_sandwich", "sandwich_vs_product"}) {
          const auto* e = entry(rep, s, "k=1");
          t.expect(e && std::abs(e->margin) <= kScalarTol, std::string("scalar equality ") + s);
        }
      }
    }
  }
  return campaign_note(res);
}

std::string criterion3(Tally& t) {
  const auto res = pptlab::run_verify_campaign(default_campaign({"norm_inequality"}));
  expect_campaign(t, res, {"norm_bound", "corollary_X_vs_geometric_mean"});

  // Family composition and the r = 1, t = 1/2 corollary on its own.
  for (int n : {2, 3, 5, 8}) {
    pptlab::VerifyOptions opts;
    opts.tol = kTol;
    opts.norms.gammas = pptlab::random_gamma_weights(pptlab::SamplerConfig(kSeed, n), 0, 20);
    for (int i = 0; i < 50; ++i) {
      const Block blk = pptlab::random_ppt_block(pptlab::SamplerConfig(kSeed, n), 1000 + i,
                                                 pptlab::kAllPptKinds[i % std::size(pptlab::kAllPptKinds)]);
      const auto rep = pptlab::check_norm_inequality(blk, 0.5, 1.0, opts);
      t.expect(rep.passed(), "n=" + std::to_string(n) + " corollary trial " + std::to_string(i));
      const auto* cor = rep.stage("corollary_X_vs_geometric_mean");
      t.expect(cor && cor->entries.size() == static_cast<std::size_t>(n + 5 + 20), "family size");
      t.expect(rep.params.family == "ky_fan+schatten{1,1.5,2,3,inf}+gamma(20)", "family label " + rep.params.family);
    }
  }
  return campaign_note(res);
}

std::string criterion4(Tally& t) {
  const auto res = pptlab::run_verify_campaign(default_campaign({"half_index"}));
  expect_campaign(t, res, {"arithmetic_mean", "geometric_mean", "geodesic_average"});
  const int want[] = {1, 1, 2, 2};
  for (int j = 1; j <= 4; ++j) t.expect(pptlab::half_index(j) == want[j - 1], "index map j=" + std::to_string(j));
  return campaign_note(res) + "index map 1,1,2,2; ";
}

std::string criterion5(Tally& t) {
  const auto w = pptlab::necessity_witness(kTol);
  t.expect(w.report.verdict == pptlab::Verdict::Fail, "Bell block not reported as failure");
  const auto* e = entry(w.report, "geometric_mean", "j=1->1");
  t.expect(e != nullptr, "half-index entry missing");
  const double margin = e ? e->margin : 0.0;
  t.expect(e && std::abs(e->lhs - 0.5) <= kScalarTol, "s1(X) != 0.5");
  t.expect(margin <= kBellMargin, "margin " + str(margin));
  const auto replay = pptlab::replay_witness(pptlab::witness_from_json(pptlab::witness_to_json(w)));
  t.expect(replay.verdict == pptlab::Verdict::Fail, "witness replay did not reproduce");
  return "raw margin " + str(margin) + "; ";
}

std::string criterion6(Tally& t) {
  long trials = 0;
  for (int n : {2, 3}) {
    for (int m : {1, 2, 3}) {
      const pptlab::SamplerConfig cfg(kSeed + 6, n);
      for (int i = 0; i < 200; ++i) {
        std::vector<pptlab::MatrixPair> pairs;
        for (int j = 0; j < m; ++j) pairs.push_back(pptlab::random_commuting_pair(cfg, (i * 8 + m) * 4 + j));
        const auto rep = pptlab::check_audenaert_chain(pairs);
        ++trials;
        t.expect(rep.passed(), "n=" + std::to_string(n) + " m=" + std::to_string(m) + " trial " + std::to_string(i) +
                                   " margin " + str(rep.min_margin));
        for (const auto& st : rep.stages) t.expect(st.min_normalized() >= -kTol, st.name);
      }
    }
  }
  // Scalar m = 2: sum a_j b_j <= (sum sqrt(a_j b_j))^2 <= (sum a_j)(sum b_j).
  std::mt19937_64 rng(kSeed + 60);
  std::lognormal_distribution<double> pos(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a1 = pos(rng), b1 = pos(rng), a2 = pos(rng), b2 = pos(rng);
    const auto rep = pptlab::check_audenaert_chain({{ComplexMatrix::Constant(1, 1, a1), ComplexMatrix::Constant(1, 1, b1)},
                                                    {ComplexMatrix::Constant(1, 1, a2), ComplexMatrix::Constant(1, 1, b2)}});
    const double q0 = a1 * b1 + a2 * b2;
    const double q1 = std::pow(std::sqrt(a1 * b1) + std::sqrt(a2 * b2), 2);
    const double q2 = (a1 + a2) * (b1 + b2);
    const auto* e0 = entry(rep, "sum_products_vs_root_sum_squared", "schatten_1");
    const auto* e1 = entry(rep, "root_sum_squared_vs_geometric_mean_squared", "schatten_1");
    const auto* e4 = entry(rep, "sandwich_vs_product", "schatten_1");
    t.expect(e0 && close_rel(e0->lhs, q0, kScalarTol) && close_rel(e0->rhs, q1, kScalarTol), "Cauchy form q0/q1");
    t.expect(e1 && close_rel(e1->rhs, q2, kScalarTol) && e4 && close_rel(e4->rhs, q2, kScalarTol), "Cauchy form q2");
  }
  return std::to_string(trials) + " commuting trials + 200 scalar; ";
}

std::string criterion7(Tally& t) {
  const int dims[] = {2, 3, 5};
  const double rs[] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 200; ++i) {
    const int n = dims[i % 3];
    const pptlab::SamplerConfig cfg(kSeed + 7, n);
    std::vector<pptlab::MatrixPair> pairs;
    for (int j = 0; j <= i % 3; ++j) {
      pairs.emplace_back(pptlab::random_complex(cfg, i * 16 + 2 * j), pptlab::random_complex(cfg, i * 16 + 2 * j + 1));
    }
    const auto polar = pptlab::check_polar_sum_chain(pairs, rs[(i / 3) % 3]);
    t.expect(polar.passed(), "polar_sum trial " + std::to_string(i) + " margin " + str(polar.min_margin));

    const auto had = pptlab::check_hadamard_pair(pptlab::random_hermitian(cfg, 5000 + 2 * i),
                                                 pptlab::random_hermitian(cfg, 5001 + 2 * i));
    t.expect(had.passed(), "hadamard_pair trial " + std::to_string(i) + " margin " + str(had.min_margin));

    std::vector<ComplexMatrix> mats;
    for (int j = 0; j <= i % 3; ++j) mats.push_back(pptlab::random_complex(cfg, 9000 + i * 4 + j));
    const auto multi = pptlab::check_hadamard_multi(mats);
    t.expect(multi.passed(), "hadamard_multi trial " + std::to_string(i) + " margin " + str(multi.min_margin));
  }
  return "600 trials; ";
}

std::string criterion8(Tally& t) {
  long trials = 0;
  for (double r : {1.0, 1.25, 1.5, 2.0}) {
    for (int i = 0; i < 400; ++i) {
      const bool hermitian = i < 200;
      const int n = 2 + i % 4;
      const pptlab::SamplerConfig cfg(kSeed + 8, n);
      const ComplexMatrix a = hermitian ? pptlab::random_hermitian(cfg, 2 * i) : pptlab::random_complex(cfg, 2 * i);
      const ComplexMatrix b =
          hermitian ? pptlab::random_hermitian(cfg, 2 * i + 1) : pptlab::random_complex(cfg, 2 * i + 1);
      const auto rep = pptlab::check_sum_power(a, b, r);
      ++trials;
      const std::string tag = (hermitian ? "hermitian" : "general") + std::string(" r=") + str(r) + " trial " +
                              std::to_string(i);
      t.expect(rep.passed(), tag + " margin " + str(rep.min_margin));
      std::vector<std::string> want{"sum_vs_factors", "factors_vs_aujla", "sum_vs_aujla"};
      if (hermitian) {
        for (const char* s : {"hermitian:sum_vs_mean", "hermitian:mean_vs_sandwich", "hermitian:sandwich_vs_factors",
                              "hermitian:factors_vs_aujla"}) {
          want.emplace_back(s);
        }
      }
      for (const auto& s : want) {
        const auto* st = rep.stage(s);
        t.expect(st && st->asserted && st->min_normalized() >= -kTol, tag + " stage " + s);
      }
    }
  }
  return std::to_string(trials) + " pairs; ";
}

std::string criterion9(Tally& t) {
  std::mt19937_64 rng(kSeed + 9);
  double worst_rec = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 10;
    const ComplexMatrix h = oracle::random_hermitian(rng, n);
    const auto eig = pptlab::hermitian_eig<double>(h);
    const ComplexMatrix back = eig.vectors * eig.values.cast<C>().asDiagonal() * eig.vectors.adjoint();
    const double bound = kReconstruction * n * (1.0 + h.norm());
    worst_rec = std::max(worst_rec, (back - h).norm() / bound);
    t.expect((back - h).norm() <= bound, "reconstruction n=" + std::to_string(n));

    const ComplexMatrix x = oracle::random_complex(rng, n);
    const ComplexMatrix y = oracle::random_unitary(rng, n) * x * oracle::random_unitary(rng, n);
    const auto sx = pptlab::singular_values<double>(x);
    const auto sy = pptlab::singular_values<double>(y);
    const double diff = (sx - sy).cwiseAbs().maxCoeff() / (1.0 + sx(0));
    worst_inv = std::max(worst_inv, diff);
    t.expect(diff <= kInvariance, "unitary invariance n=" + std::to_string(n));
  }

  pptlab::Campaign c;
  c.seed = kSeed;
  c.dims = {2, 3};
  c.trials_per_cell = 4;
  const std::string first = pptlab::result_to_json(pptlab::run_verify_campaign(c)).dump(2);
  const std::string second = pptlab::result_to_json(pptlab::run_verify_campaign(c)).dump(2);
  t.expect(first == second, "campaign bytes differ between runs");
  return "reconstruction " + str(worst_rec) + "x bound, invariance " + str(worst_inv) + ", " +
         std::to_string(first.size()) + " report bytes identical; ";
}

// n = 1: every check against closed forms written out here.
std::string criterion10(Tally& t) {
  std::mt19937_64 rng(kSeed + 10);
  std::lognormal_distribution<double> pos(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto m1 = [](C v) { return ComplexMatrix::Constant(1, 1, v); };
  auto log_eq = [&](const CheckReport& rep, const char* stage, double lhs, double rhs) {
    const auto* e = entry(rep, stage, "k=1");
    t.expect(e && std::abs(e->lhs - lhs) <= kScalarTol * std::max(1.0, std::abs(lhs)) &&
                 std::abs(e->rhs - rhs) <= kScalarTol * std::max(1.0, std::abs(rhs)),
             rep.check_name + "/" + stage);
  };
  auto lin_eq = [&](const CheckReport& rep, const char* stage, const char* label, double lhs, double rhs) {
    const auto* e = entry(rep, stage, label);
    t.expect(e && close_rel(e->lhs, lhs, kScalarTol) && close_rel(e->rhs, rhs, kScalarTol),
             rep.check_name + "/" + stage + "/" + label);
  };
  pptlab::VerifyOptions opts;
  opts.norms.gammas = {pptlab::GammaWeights({1.0})};

  for (int i = 0; i < 1000; ++i) {
    const double a = pos(rng), b = pos(rng);
    const double mod = std::sqrt(a * b) * unit(rng);
    const C x = std::polar(mod, 2 * M_PI * unit(rng));
    const double tw = unit(rng);
    const double r = 0.25 + 2.75 * unit(rng);
    const Block blk(m1(a), m1(x), m1(b));
    const double gt = std::pow(a, 1 - tw) * std::pow(b, tw);  // a #_t b
    const double g1t = std::pow(a, tw) * std::pow(b, 1 - tw);

    // 2x2 [[p, x], [conj x, q]] has smallest eigenvalue (p+q)/2 - sqrt(((p-q)/2)^2 + |x|^2).
    const auto lemma = pptlab::check_lemma_geodesic_ppt(blk, tw, opts);
    const double min_eig = 0.5 * (gt + g1t) - std::hypot(0.5 * (gt - g1t), mod);
    const auto* le = entry(lemma, "geodesic_block_ppt", "min_eig(G)");
    t.expect(le && std::abs(le->rhs - min_eig) <= kScalarTol * (1 + gt + g1t), "lemma min eigenvalue");

    const auto chain = pptlab::check_log_majorization_chain(blk, tw, r, opts);
    const double lab = r * std::log(a * b);
    log_eq(chain, "X_vs_geometric", 2 * r * std::log(mod), lab);
    log_eq(chain, "geometric_vs_log_euclidean", lab, lab);
    log_eq(chain, "log_euclidean_vs_sandwich", lab, lab);
    log_eq(chain, "sandwich_vs_product", lab, lab);

    const auto norm = pptlab::check_norm_inequality(blk, tw, r, opts);
    for (const char* label : {"ky_fan_1", "schatten_1.5", "schatten_inf", "gamma_0"}) {
      lin_eq(norm, "norm_bound", label, std::pow(mod, 2 * r), std::pow(gt * g1t, r));
      lin_eq(norm, "corollary_X_vs_geometric_mean", label, mod, std::sqrt(a * b));
    }

    const auto half = pptlab::check_half_index(blk, tw, opts);
    lin_eq(half, "geodesic_average", "j=1->1", mod, 0.5 * (gt + g1t));
    lin_eq(half, "arithmetic_mean", "j=1->1", mod, 0.5 * (a + b));
    lin_eq(half, "geometric_mean", "j=1->1", mod, std::sqrt(a * b));

    const auto amgm = pptlab::check_amgm(m1(a), m1(b), tw, opts);
    const auto* ae = amgm.stages.empty() ? nullptr : &amgm.stages[0].entries[0];
    t.expect(ae && close_rel(ae->rhs, (1 - tw) * a + tw * b - gt, kScalarTol * (a + b)), "amgm difference");

    const auto bg = pptlab::check_bhatia_grover(m1(a), m1(b), tw, r, opts);
    const double lg = r * std::log(gt);
    log_eq(bg, "geometric_vs_log_euclidean", lg, lg);
    log_eq(bg, "log_euclidean_vs_sandwich", lg, lg);
    log_eq(bg, "sandwich_vs_product", lg, lg);

    // Pairs: m in {1, 2, 3}.
    const int m = 1 + i % 3;
    std::vector<pptlab::MatrixPair> pos_pairs, gen_pairs;
    double sa = 0, sb = 0, sab = 0, sroot = 0, gram_a = 0, gram_b = 0;
    C cross = 0;
    for (int j = 0; j < m; ++j) {
      const double aj = pos(rng), bj = pos(rng);
      pos_pairs.emplace_back(m1(aj), m1(bj));
      sa += aj, sb += bj, sab += aj * bj, sroot += std::sqrt(aj * bj);
      const C cj = std::polar(pos(rng), 2 * M_PI * unit(rng));
      const C dj = std::polar(pos(rng), 2 * M_PI * unit(rng));
      gen_pairs.emplace_back(m1(cj), m1(dj));
      cross += std::conj(cj) * dj;
      gram_a += std::norm(cj), gram_b += std::norm(dj);
    }
    const auto aud = pptlab::check_audenaert_chain(pos_pairs, opts);
    lin_eq(aud, "sum_products_vs_root_sum_squared", "schatten_2", sab, sroot * sroot);
    lin_eq(aud, "root_sum_squared_vs_geometric_mean_squared", "schatten_2", sroot * sroot, sa * sb);
    lin_eq(aud, "geometric_mean_squared_vs_log_euclidean_squared", "schatten_2", sa * sb, sa * sb);
    lin_eq(aud, "log_euclidean_squared_vs_sandwich", "schatten_2", sa * sb, sa * sb);
    lin_eq(aud, "sandwich_vs_product", "schatten_2", sa * sb, sa * sb);

    const auto polar = pptlab::check_polar_sum_chain(gen_pairs, 2.0, opts);
    lin_eq(polar, "modulus_squared_vs_geometric_mean_squared", "ky_fan_1", std::norm(cross), gram_a * gram_b);
    lin_eq(polar, "geometric_mean_squared_vs_sandwich", "ky_fan_1", gram_a * gram_b, gram_a * gram_b);
    lin_eq(polar, "sandwich_vs_rotated_product", "ky_fan_1", gram_a * gram_b, gram_a * gram_b);

    const C u = gen_pairs[0].first(0, 0), v = gen_pairs[0].second(0, 0);
    const double rr = 1.0 + unit(rng);
    const auto sp = pptlab::check_sum_power(m1(u), m1(v), rr, opts);
    const double factors = 0.5 * rr * (std::log1p(std::norm(u)) + std::log1p(std::norm(v)));
    const double aujla = std::log1p(std::pow(std::abs(u), rr)) + std::log1p(std::pow(std::abs(v), rr));
    log_eq(sp, "sum_vs_factors", rr * std::log(std::abs(u + v)), factors);
    log_eq(sp, "rotated_mean_vs_factors", factors, factors);
    log_eq(sp, "factors_vs_aujla", factors, aujla);

    const double ha = a - b, hb = b * (unit(rng) - 0.5) + 0.1;
    const auto hp = pptlab::check_hadamard_pair(m1(ha), m1(hb), opts);
    log_eq(hp, "hadamard_prefix", 2 * std::log(std::abs(ha * hb)), std::log(ha * ha * hb * hb));
    lin_eq(hp, "modulus_squared_vs_diagonal_product", "schatten_inf", ha * ha * hb * hb, ha * ha * hb * hb);
    lin_eq(hp, "squares_vs_norms_squared", "schatten_inf", ha * ha * hb * hb, ha * ha * hb * hb);

    std::vector<ComplexMatrix> mats;
    double prod_sq = 1.0;
    for (const auto& [c1, c2] : gen_pairs) {
      mats.push_back(c1);
      prod_sq *= std::norm(c1(0, 0));
    }
    const auto hm = pptlab::check_hadamard_multi(mats, opts);
    log_eq(hm, "hadamard_prefix", std::log(prod_sq), std::log(prod_sq));
    lin_eq(hm, "modulus_squared_vs_gram_product", "gamma_0", prod_sq, prod_sq);
  }
  return "1000 scalar trials over 11 checks; ";
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<std::string(Tally&)>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Tally tally;
    std::string note;
    try {
      note = run(tally);
    } catch (const std::exception& e) {
      tally.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = tally.failed == 0;
    failed += ok ? 0 : 1;
    std::printf("criterion %d: %s  %s%s [%.1fs]\n", id, ok ? "PASS" : "FAIL", note.c_str(), tally.summary().c_str(),
                secs);
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
