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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pptlab/blocks.hpp"
#include "pptlab/sampling.hpp"

namespace {

using pptlab::Block;
using pptlab::ComplexMatrix;
using C = std::complex<double>;

ComplexMatrix scalar(double v) { return ComplexMatrix::Constant(1, 1, C(v)); }

Block bell() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 0.5;
  b(1, 1) = 0.5;
  x(0, 1) = 0.5;
  return Block(a, x, b);
}

TEST(Embed, Examples) {
  const auto h = pptlab::embed(Block(scalar(1), scalar(0), scalar(1)));
  EXPECT_EQ(h, ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  ComplexMatrix expected(2, 2);
  expected << 2, 4, 4, 8;
  EXPECT_EQ(pptlab::embed(Block(scalar(2), scalar(4), scalar(8))), expected);
  std::mt19937_64 rng(1);
  const Block blk(oracle::random_hermitian(rng, 3), oracle::random_complex(rng, 3), oracle::random_hermitian(rng, 3));
  const Block back = pptlab::split(pptlab::embed(blk));
  EXPECT_EQ(back.a, blk.a);
  EXPECT_EQ(back.x, blk.x);
  EXPECT_EQ(back.b, blk.b);
}

TEST(Block2x2, Validation) {
  EXPECT_THROW(Block(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3), ComplexMatrix::Identity(2, 2)),
               pptlab::Error);
  ComplexMatrix nh(2, 2);
  nh << 1, 1, 0, 1;
  EXPECT_THROW(Block(nh, ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)), pptlab::Error);
}

TEST(PartialTranspose, SwapsAdjointAndIsInvolution) {
  std::mt19937_64 rng(2);
  const Block blk(oracle::random_psd(rng, 3), oracle::random_complex(rng, 3), oracle::random_psd(rng, 3));
  const Block tau = pptlab::partial_transpose(blk);
  EXPECT_EQ(tau.x, ComplexMatrix(blk.x.adjoint()));
  EXPECT_EQ(pptlab::partial_transpose(tau).x, blk.x);
  const Block herm(blk.a, oracle::random_hermitian(rng, 3), blk.b);
  EXPECT_LE((pptlab::partial_transpose(herm).x - herm.x).norm(), 1e-15);
}

TEST(IsPpt, Examples) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_TRUE(pptlab::is_ppt(Block(id, id, id), 1e-9).is_ppt);
  EXPECT_TRUE(pptlab::is_ppt(Block(scalar(2), scalar(4), scalar(8)), 1e-9).is_ppt);
  const auto cert = pptlab::is_ppt(bell(), 1e-9);
  EXPECT_FALSE(cert.is_ppt);
  // Oracle: Eigen's solver on the 4x4 embeddings.
  const auto h = oracle::eigenvalues(pptlab::embed(bell()));
  const auto h_tau = oracle::eigenvalues(pptlab::embed(pptlab::partial_transpose(bell())));
  EXPECT_NEAR(cert.h_min_eig, h(3), 1e-15);
  EXPECT_NEAR(cert.h_tau_min_eig, h_tau(3), 1e-15);
  EXPECT_NEAR(cert.h_min_eig, 0.0, 1e-15);
  EXPECT_NEAR(cert.h_tau_min_eig, -0.5, 1e-15);
}

TEST(SchurCheck, Examples) {
  EXPECT_TRUE(pptlab::schur_check(Block(scalar(2), scalar(4), scalar(8))));
  EXPECT_FALSE(pptlab::schur_check(Block(scalar(1), scalar(2), scalar(1))));
}

TEST(SchurCheck, AgreesWithEmbeddingOnPositiveA) {
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    std::mt19937_64 rng(100 + trial);
    const ComplexMatrix a = oracle::random_psd(rng, n) + 0.1 * ComplexMatrix::Identity(n, n);
    const ComplexMatrix b = oracle::random_psd(rng, n);
    // Mix of PSD (Gram) and clearly non-PSD blocks.
    const double s = trial % 2 == 0 ? 0.5 : 3.0;
    const ComplexMatrix x = pptlab::matrix_power(a, 0.5) * pptlab::random_contraction(pptlab::SamplerConfig(5, n), trial) *
                            pptlab::matrix_power(b, 0.5) * C(s);
    const Block blk(a, x, b);
    const bool schur = pptlab::schur_check(blk);
    const bool psd = pptlab::is_ppt(blk, pptlab::psd_tolerance(1.0)).h_psd_at(pptlab::psd_tolerance(1.0));
    agree += schur == psd;
  }
  EXPECT_EQ(agree, 200);
}

TEST(GeodesicBlock, Examples) {
  const Block s(scalar(2), scalar(4), scalar(8));
  const Block g = pptlab::geodesic_block(s, 0.5);
  EXPECT_NEAR(g.a(0, 0).real(), 4, 1e-14);
  EXPECT_NEAR(g.b(0, 0).real(), 4, 1e-14);
  EXPECT_EQ(g.x, s.x);
  std::mt19937_64 rng(3);
  const ComplexMatrix a = oracle::random_psd(rng, 3) + ComplexMatrix::Identity(3, 3);
  const Block blk(a, oracle::random_complex(rng, 3), oracle::random_psd(rng, 3) + ComplexMatrix::Identity(3, 3));
  const Block g0 = pptlab::geodesic_block(blk, 0.0);
  EXPECT_LE((g0.a - blk.a).norm(), 1e-12 * blk.a.norm());
  EXPECT_LE((g0.b - blk.b).norm(), 1e-10 * blk.b.norm());
  const Block same(a, blk.x, a);
  const Block gs = pptlab::geodesic_block(same, 0.3);
  EXPECT_LE((gs.a - a).norm(), 1e-12 * a.norm());
  EXPECT_LE((gs.b - a).norm(), 1e-12 * a.norm());
}

// Lemma as a property: 500 seeded PPT blocks x t grid.
TEST(GeodesicBlock, PreservesPpt) {
  const double tol = pptlab::psd_tolerance(1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::array{2, 3, 5, 8}[trial % 4];
    const pptlab::SamplerConfig cfg(31, n);
    const auto kind = pptlab::kAllPptKinds[trial % 5];
    const Block blk = pptlab::random_ppt_block(cfg, trial, kind);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto cert = pptlab::is_ppt(pptlab::geodesic_block(blk, t), tol);
      EXPECT_TRUE(cert.holds_at(tol)) << "trial " << trial << " t " << t << " " << cert.h_min_eig << " "
                                      << cert.h_tau_min_eig;
    }
  }
}

TEST(PolarRotate, Examples) {
  const auto r = pptlab::polar_rotate(Block(scalar(1), scalar(-3), scalar(9)));
  EXPECT_NEAR(r.block.x(0, 0).real(), 3.0, 1e-15);
  EXPECT_NEAR(r.unitary(0, 0).real(), -1.0, 1e-15);
  EXPECT_TRUE(pptlab::is_ppt(r.block, 1e-9).is_ppt);

  std::mt19937_64 rng(4);
  const ComplexMatrix p = oracle::random_psd(rng, 3);
  const Block blk(ComplexMatrix::Identity(3, 3) * 10.0, p, ComplexMatrix::Identity(3, 3) * 10.0);
  const auto same = pptlab::polar_rotate(blk);
  EXPECT_LE((same.block.x - p).norm(), 1e-10 * p.norm());
}

TEST(PolarRotate, OutputIsPptAndKeepsSpectrum) {
  const double tol = pptlab::psd_tolerance(1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::mt19937_64 rng(500 + trial);
    ComplexMatrix m = oracle::random_complex(rng, 2 * n);
    if (trial % 3 == 0) m.row(0).setZero();  // rank-deficient X in a third of the trials
    if (trial % 3 == 0 && n > 1) m.col(n) = m.col(n + 1);
    const ComplexMatrix h = m.adjoint() * m;
    const Block blk = pptlab::split<double>(pptlab::hermitian_part(h));
    const auto rot = pptlab::polar_rotate(blk);
    EXPECT_TRUE(pptlab::is_ppt(rot.block, tol).is_ppt) << trial;
    const auto s0 = oracle::singular_values(blk.x);
    const auto s1 = oracle::singular_values(rot.block.x);
    EXPECT_LE((s0 - s1).cwiseAbs().maxCoeff(), 1e-10 * (1 + s0(0)));
  }
}

TEST(Hadamard, Examples) {
  ComplexMatrix d1 = ComplexMatrix::Zero(2, 2), d2 = ComplexMatrix::Zero(2, 2), d3 = ComplexMatrix::Zero(2, 2);
  d1(0, 0) = 1, d1(1, 1) = 2, d2(0, 0) = 3, d2(1, 1) = 4, d3(0, 0) = 3, d3(1, 1) = 8;
  EXPECT_EQ(pptlab::hadamard(d1, d2), d3);
  std::mt19937_64 rng(5);
  const auto x = oracle::random_complex(rng, 3);
  EXPECT_EQ(pptlab::hadamard<double>(x, ComplexMatrix::Ones(3, 3)), x);
  EXPECT_THROW(pptlab::hadamard<double>(x, ComplexMatrix::Ones(2, 2)), pptlab::Error);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const ComplexMatrix p = pptlab::hermitian_part(
        ComplexMatrix(pptlab::hadamard<double>(oracle::random_psd(rng, n), oracle::random_psd(rng, n))));
    EXPECT_TRUE(pptlab::is_psd(p, pptlab::psd_tolerance(1.0)).ok);
  }
}

}  // namespace
