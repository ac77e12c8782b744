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

#ifndef PPTLAB_SAMPLING_HPP
#define PPTLAB_SAMPLING_HPP

// Seeded generators for the matrix families the inequalities quantify over.
// Every generator is a pure function of (config, stream_id): the pair is mixed
// into an independent engine seed, so trials can run in any order.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pptlab/blocks.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/majorization.hpp"

namespace pptlab {

struct SamplerConfig {
  std::uint64_t master_seed = 0;
  int dim = 2;
  double scale = 1.0;  // standard deviation of each Gaussian entry component

  SamplerConfig() = default;
  SamplerConfig(std::uint64_t seed, int n, double s = 1.0);
};

enum class PptSampleKind {
  HermitianOffdiag,
  PolarRotated,
  RejectionGeneral,
  GramSum,
  CommutingPairs,
};

inline constexpr PptSampleKind kAllPptKinds[] = {
    PptSampleKind::HermitianOffdiag, PptSampleKind::PolarRotated, PptSampleKind::RejectionGeneral,
    PptSampleKind::GramSum, PptSampleKind::CommutingPairs};

std::string_view to_string(PptSampleKind kind);
std::optional<PptSampleKind> parse_sample_kind(std::string_view name);

/// Attempts allowed to the rejection sampler before giving up.
inline constexpr int kRejectionBudget = 1000;

/// Tolerance at which the sampler certifies its PPT output.
inline constexpr double kSamplerPsdTol = 1e-9;

/// splitmix64 finalizer applied to (master_seed, stream_id).
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_id);

/// Combines several indices into one stream id.
std::uint64_t combine_stream(std::uint64_t a, std::uint64_t b);

std::mt19937_64 make_engine(const SamplerConfig& cfg, std::uint64_t stream_id);

// Engine-level generators, for callers drawing several objects from one stream.
namespace draw {
ComplexMatrix gaussian(std::mt19937_64& rng, int n, double scale);
ComplexMatrix gaussian(std::mt19937_64& rng, int rows, int cols, double scale);
ComplexMatrix psd(std::mt19937_64& rng, int n, double scale);
ComplexMatrix hermitian(std::mt19937_64& rng, int n, double scale);
ComplexMatrix unitary(std::mt19937_64& rng, int n);
ComplexMatrix contraction(std::mt19937_64& rng, int n);
std::pair<ComplexMatrix, ComplexMatrix> commuting_pair(std::mt19937_64& rng, int n, double scale);
}  // namespace draw

/// I.i.d. complex Gaussian entries, real and imaginary parts N(0, scale^2).
ComplexMatrix random_complex(const SamplerConfig& cfg, std::uint64_t stream_id);

/// Gram matrix G^* G of a random_complex G.
ComplexMatrix random_psd(const SamplerConfig& cfg, std::uint64_t stream_id);

ComplexMatrix random_hermitian(const SamplerConfig& cfg, std::uint64_t stream_id);

/// Haar unitary from the QR factorization of a Gaussian matrix.
ComplexMatrix random_unitary(const SamplerConfig& cfg, std::uint64_t stream_id);

/// Gaussian matrix divided by its spectral norm, so s_1 = 1 up to rounding.
ComplexMatrix random_contraction(const SamplerConfig& cfg, std::uint64_t stream_id);

/// A = U D U^*, B = U E U^* with a shared Haar U and positive diagonals.
std::pair<ComplexMatrix, ComplexMatrix> random_commuting_pair(const SamplerConfig& cfg, std::uint64_t stream_id);

/// A block certified PPT at kSamplerPsdTol.  Throws RejectionBudgetExceeded
/// when the rejection sampler runs out of attempts.
Block random_ppt_block(const SamplerConfig& cfg, std::uint64_t stream_id, PptSampleKind kind);

/// PSD blocks whose partial transpose is not PSD; used to probe necessity.
enum class NonPptKind { Bell, PsdGeneral };
std::string_view to_string(NonPptKind kind);
Block random_non_ppt_block(const SamplerConfig& cfg, std::uint64_t stream_id, NonPptKind kind);

/// Regularized Bell block: A = diag(1/2, 0, ...) + eps I, B = diag(0, 1/2, 0, ...) + eps I,
/// X = (1/2) e_1 e_2^T.  PSD, but its partial transpose has eigenvalue -1/2 + eps.
Block bell_block(int n, double eps);

/// Random descending weights with gamma_1 = 1.
std::vector<GammaWeights> random_gamma_weights(const SamplerConfig& cfg, std::uint64_t stream_id, int count);

/// Adds delta I to each diagonal block, delta = rel * (mean eigenvalue of that block).
/// Adding PSD diagonal terms keeps a PPT block PPT.
Block strictly_positive(const Block& blk, double rel = 1e-6);

}  // namespace pptlab

#endif  // PPTLAB_SAMPLING_HPP
