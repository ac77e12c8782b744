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

#include "pptlab/sampling.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace pptlab {

SamplerConfig::SamplerConfig(std::uint64_t seed, int n, double s) : master_seed(seed), dim(n), scale(s) {
  if (n < 1) throw Error(ErrorKind::InvalidParam, "SamplerConfig: dim must be >= 1");
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidParam, "SamplerConfig: scale must be positive");
}

std::string_view to_string(PptSampleKind kind) {
  switch (kind) {
    case PptSampleKind::HermitianOffdiag: return "hermitian_offdiag";
    case PptSampleKind::PolarRotated: return "polar_rotated";
    case PptSampleKind::RejectionGeneral: return "rejection_general";
    case PptSampleKind::GramSum: return "gram_sum";
    case PptSampleKind::CommutingPairs: return "commuting_pairs";
  }
  return "unknown";
}

std::optional<PptSampleKind> parse_sample_kind(std::string_view name) {
  for (PptSampleKind kind : kAllPptKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(NonPptKind kind) {
  return kind == NonPptKind::Bell ? "bell" : "psd_general";
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double spectral_norm(const ComplexMatrix& m) {
  return singular_values<double>(m)(0);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL));
}

std::uint64_t combine_stream(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a * 0x9e3779b97f4a7c15ULL ^ (b + 0x7f4a7c159e3779b9ULL));
}

std::mt19937_64 make_engine(const SamplerConfig& cfg, std::uint64_t stream_id) {
  return std::mt19937_64(stream_seed(cfg.master_seed, stream_id));
}

namespace draw {

ComplexMatrix gaussian(std::mt19937_64& rng, int rows, int cols, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  }
  return g;
}

ComplexMatrix gaussian(std::mt19937_64& rng, int n, double scale) {
  return gaussian(rng, n, n, scale);
}

ComplexMatrix psd(std::mt19937_64& rng, int n, double scale) {
  const ComplexMatrix g = gaussian(rng, n, scale);
  return hermitian_part(ComplexMatrix(g.adjoint() * g));
}

ComplexMatrix hermitian(std::mt19937_64& rng, int n, double scale) {
  return hermitian_part(gaussian(rng, n, scale));
}

ComplexMatrix unitary(std::mt19937_64& rng, int n) {
  const ComplexMatrix g = gaussian(rng, n, 1.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix contraction(std::mt19937_64& rng, int n) {
  const ComplexMatrix g = gaussian(rng, n, 1.0);
  const double top = spectral_norm(g);
  if (!(top > 0.0)) return ComplexMatrix::Zero(n, n);
  // Dividing by slightly more than s_1 keeps s_1(K) <= 1 despite rounding.
  return g / std::complex<double>(top * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()));
}

std::pair<ComplexMatrix, ComplexMatrix> commuting_pair(std::mt19937_64& rng, int n, double scale) {
  const ComplexMatrix u = unitary(rng, n);
  std::gamma_distribution<double> gamma(2.0, scale * scale);
  RealVector d(n);
  RealVector e(n);
  for (int j = 0; j < n; ++j) d(j) = gamma(rng);
  for (int j = 0; j < n; ++j) e(j) = gamma(rng);
  ComplexMatrix a = u * d.cast<std::complex<double>>().asDiagonal() * u.adjoint();
  ComplexMatrix b = u * e.cast<std::complex<double>>().asDiagonal() * u.adjoint();
  return {hermitian_part(a), hermitian_part(b)};
}

}  // namespace draw

ComplexMatrix random_complex(const SamplerConfig& cfg, std::uint64_t stream_id) {
  auto rng = make_engine(cfg, stream_id);
  return draw::gaussian(rng, cfg.dim, cfg.scale);
}

ComplexMatrix random_psd(const SamplerConfig& cfg, std::uint64_t stream_id) {
  auto rng = make_engine(cfg, stream_id);
  return draw::psd(rng, cfg.dim, cfg.scale);
}

ComplexMatrix random_hermitian(const SamplerConfig& cfg, std::uint64_t stream_id) {
  auto rng = make_engine(cfg, stream_id);
  return draw::hermitian(rng, cfg.dim, cfg.scale);
}

ComplexMatrix random_unitary(const SamplerConfig& cfg, std::uint64_t stream_id) {
  auto rng = make_engine(cfg, stream_id);
  return draw::unitary(rng, cfg.dim);
}

ComplexMatrix random_contraction(const SamplerConfig& cfg, std::uint64_t stream_id) {
  auto rng = make_engine(cfg, stream_id);
  return draw::contraction(rng, cfg.dim);
}

std::pair<ComplexMatrix, ComplexMatrix> random_commuting_pair(const SamplerConfig& cfg, std::uint64_t stream_id) {
  auto rng = make_engine(cfg, stream_id);
  return draw::commuting_pair(rng, cfg.dim, cfg.scale);
}

namespace {

// A^{-1/2} for a PSD A with a regularized inverse.
ComplexMatrix inverse_root(const ComplexMatrix& a) {
  const auto eig = detail::invertible_eig<double>(a, "sampler");
  return apply_spectral(eig, [](double lambda) { return 1.0 / std::sqrt(lambda); });
}

Block draw_hermitian_offdiag(std::mt19937_64& rng, const SamplerConfig& cfg) {
  const int n = cfg.dim;
  ComplexMatrix a = draw::psd(rng, n, cfg.scale);
  ComplexMatrix b = draw::psd(rng, n, cfg.scale);
  const ComplexMatrix z = draw::hermitian(rng, n, cfg.scale);
  // H >= 0 iff ||A^{-1/2} X B^{-1/2}|| <= 1; scale Z to a random fraction of that limit.
  const ComplexMatrix w = inverse_root(a) * z * inverse_root(b);
  const double limit = spectral_norm(w);
  const double c = limit > 0.0 ? uniform01(rng) / limit : 0.0;
  return Block(std::move(a), z * std::complex<double>(c), std::move(b));
}

Block draw_polar_rotated(std::mt19937_64& rng, const SamplerConfig& cfg) {
  const int n = cfg.dim;
  const ComplexMatrix m = draw::gaussian(rng, 2 * n, cfg.scale / std::sqrt(2.0));
  const ComplexMatrix h = hermitian_part(ComplexMatrix(m.adjoint() * m));
  return polar_rotate(split(h)).block;
}

Block draw_rejection_general(std::mt19937_64& rng, const SamplerConfig& cfg, const ComplexMatrix& a,
                             const ComplexMatrix& b, const ComplexMatrix& a_root, const ComplexMatrix& b_root) {
  const ComplexMatrix k = draw::contraction(rng, cfg.dim) * std::complex<double>(uniform01(rng));
  return Block(a, a_root * k * b_root, b);
}

Block draw_gram_sum(std::mt19937_64& rng, const SamplerConfig& cfg) {
  const int n = cfg.dim;
  const int m = 1 + static_cast<int>(rng() % 3);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  std::normal_distribution<double> normal(0.0, cfg.scale);
  for (int j = 0; j < m; ++j) {
    // A_j, B_j Hermitian with a common eigenbasis, so A_j^* B_j = B_j^* A_j.
    const ComplexMatrix u = draw::unitary(rng, n);
    RealVector d(n);
    RealVector e(n);
    for (int i = 0; i < n; ++i) d(i) = normal(rng);
    for (int i = 0; i < n; ++i) e(i) = normal(rng);
    const ComplexMatrix aj = u * d.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    const ComplexMatrix bj = u * e.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    a += aj.adjoint() * aj;
    x += aj.adjoint() * bj;
    b += bj.adjoint() * bj;
  }
  return Block(hermitian_part(a), hermitian_part(x), hermitian_part(b));
}

Block draw_commuting_pairs(std::mt19937_64& rng, const SamplerConfig& cfg) {
  const int n = cfg.dim;
  const int m = 1 + static_cast<int>(rng() % 3);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < m; ++j) {
    const auto [aj, bj] = draw::commuting_pair(rng, n, cfg.scale);
    a += aj;
    b += bj;
    x += matrix_power<double>(aj, 0.5) * matrix_power<double>(bj, 0.5);
  }
  return Block(hermitian_part(a), hermitian_part(x), hermitian_part(b));
}

}  // namespace

Block random_ppt_block(const SamplerConfig& cfg, std::uint64_t stream_id, PptSampleKind kind) {
  auto rng = make_engine(cfg, stream_id);
  if (kind == PptSampleKind::RejectionGeneral) {
    const ComplexMatrix a = draw::psd(rng, cfg.dim, cfg.scale);
    const ComplexMatrix b = draw::psd(rng, cfg.dim, cfg.scale);
    const ComplexMatrix a_root = matrix_power<double>(a, 0.5);
    const ComplexMatrix b_root = matrix_power<double>(b, 0.5);
    for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
      Block blk = draw_rejection_general(rng, cfg, a, b, a_root, b_root);
      if (is_ppt<double>(blk, kSamplerPsdTol).is_ppt) return blk;
    }
    throw Error(ErrorKind::RejectionBudgetExceeded, "rejection_general: no PPT sample within budget");
  }
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    Block blk;
    switch (kind) {
      case PptSampleKind::HermitianOffdiag: blk = draw_hermitian_offdiag(rng, cfg); break;
      case PptSampleKind::PolarRotated: blk = draw_polar_rotated(rng, cfg); break;
      case PptSampleKind::GramSum: blk = draw_gram_sum(rng, cfg); break;
      case PptSampleKind::CommutingPairs: blk = draw_commuting_pairs(rng, cfg); break;
      case PptSampleKind::RejectionGeneral: break;
    }
    if (is_ppt<double>(blk, kSamplerPsdTol).is_ppt) return blk;
  }
  throw Error(ErrorKind::RejectionBudgetExceeded, std::string(to_string(kind)) + ": certification kept failing");
}

Block bell_block(int n, double eps) {
  if (n < 2) throw Error(ErrorKind::InvalidParam, "bell_block: needs n >= 2");
  ComplexMatrix a = ComplexMatrix::Identity(n, n) * std::complex<double>(eps);
  ComplexMatrix b = a;
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  a(0, 0) += 0.5;
  b(1, 1) += 0.5;
  x(0, 1) = 0.5;
  return Block(std::move(a), std::move(x), std::move(b));
}

Block random_non_ppt_block(const SamplerConfig& cfg, std::uint64_t stream_id, NonPptKind kind) {
  auto rng = make_engine(cfg, stream_id);
  const int n = cfg.dim;
  if (kind == NonPptKind::Bell) {
    const int bell_dim = std::max(n, 2);
    const double eps = std::pow(10.0, -8.0 + 6.0 * uniform01(rng));
    const Block base = bell_block(bell_dim, eps);
    // diag(V, V) conjugation preserves positivity of both H and its partial transpose.
    const ComplexMatrix v = draw::unitary(rng, bell_dim);
    return Block(hermitian_part(ComplexMatrix(v * base.a * v.adjoint())), v * base.x * v.adjoint(),
                 hermitian_part(ComplexMatrix(v * base.b * v.adjoint())));
  }
  const ComplexMatrix a = draw::psd(rng, n, cfg.scale);
  const ComplexMatrix b = draw::psd(rng, n, cfg.scale);
  const ComplexMatrix a_root = matrix_power<double>(a, 0.5);
  const ComplexMatrix b_root = matrix_power<double>(b, 0.5);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    // Near-unitary contractions push H to the boundary where PPT usually fails.
    const ComplexMatrix k = draw::unitary(rng, n) * std::complex<double>(1.0 - 0.1 * uniform01(rng));
    Block blk(a, a_root * k * b_root, b);
    const auto cert = is_ppt<double>(blk, kSamplerPsdTol);
    if (cert.h_psd_at(kSamplerPsdTol) && !cert.h_tau_psd_at(kSamplerPsdTol)) return blk;
  }
  throw Error(ErrorKind::RejectionBudgetExceeded, "psd_general: no non-PPT sample within budget");
}

std::vector<GammaWeights> random_gamma_weights(const SamplerConfig& cfg, std::uint64_t stream_id, int count) {
  auto rng = make_engine(cfg, stream_id);
  std::vector<GammaWeights> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    std::vector<double> g(static_cast<std::size_t>(cfg.dim));
    for (double& v : g) v = uniform01(rng);
    std::sort(g.begin(), g.end(), std::greater<double>());
    g[0] = 1.0;
    out.emplace_back(std::move(g));
  }
  return out;
}

Block strictly_positive(const Block& blk, double rel) {
  const auto n = static_cast<double>(blk.dim());
  const double delta_a = rel * blk.a.trace().real() / n;
  const double delta_b = rel * blk.b.trace().real() / n;
  const auto eye = ComplexMatrix::Identity(blk.dim(), blk.dim());
  return Block(blk.a + std::complex<double>(std::max(delta_a, 0.0)) * eye, blk.x,
               blk.b + std::complex<double>(std::max(delta_b, 0.0)) * eye);
}

}  // namespace pptlab
