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

#ifndef PPTLAB_VERIFIER_HPP
#define PPTLAB_VERIFIER_HPP

// One check per inequality.  A check evaluates both sides of every link of
// its chain, records a margin per prefix index k (log domain) or per norm
// (linear), and reduces them to a verdict.  Checks compute in long double;
// inputs and reported numbers are double.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pptlab/blocks.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/majorization.hpp"

namespace pptlab {

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

/// How a comparison's raw margin (RHS - LHS) is normalized before it is
/// compared against the tolerance.
///   LogPrefix: margin / k for the k-th prefix of a product inequality.
///   Linear:    margin / max(|lhs|, |rhs|), i.e. a relative tolerance.
///   Eigen:     min eigenvalue / (1 + max |eigenvalue|), the PSD convention.
enum class MarginKind { LogPrefix, Linear, Eigen };
std::string_view to_string(MarginKind k);

struct Comparison {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double normalized = 0.0;
};

struct Stage {
  std::string name;
  MarginKind kind = MarginKind::LogPrefix;
  bool asserted = true;
  std::vector<Comparison> entries;

  double min_normalized() const;
};

struct CheckParams {
  int dim = 0;
  std::optional<double> t;
  std::optional<double> r;
  std::optional<int> m;
  std::string family;
};

struct CheckReport {
  std::string check_name;
  CheckParams params;
  Verdict verdict = Verdict::Inconclusive;
  double min_margin = 0.0;
  double tolerance = 0.0;
  std::vector<Stage> stages;
  std::optional<std::string> witness_ref;
  std::string note;

  bool passed() const { return verdict == Verdict::Pass; }
  const Stage* stage(std::string_view name) const;
};

struct VerifyOptions {
  double tol = 1e-8;
  NormFamily norms;
};

/// [[x]] with x = (j+1)/2: the half index used by the singular-value bound.
inline int half_index(int j) { return (j + 1) / 2; }

/// Geodesic block (A #_t B, X, A #_{1-t} B) is PPT.
CheckReport check_lemma_geodesic_ppt(const Block& blk, double t, const VerifyOptions& opts = {});

/// Four-link log-majorization chain from s^{2r}(X) to the product singular values.
CheckReport check_log_majorization_chain(const Block& blk, double t, double r, const VerifyOptions& opts = {});

/// || |X|^r ||^2 <= ||(A #_t B)^r|| ||(A #_{1-t} B)^r|| over the norm family, plus
/// ||X|| <= ||A # B||.  The variant with exponent r/2 on the right is logged only.
CheckReport check_norm_inequality(const Block& blk, double t, double r, const VerifyOptions& opts = {});

/// s_j(X) <= s_{[(j+1)/2]} of the geodesic average, of (A+B)/2 and of A # B.
CheckReport check_half_index(const Block& blk, double t, const VerifyOptions& opts = {});

/// (1-t) A + t B - A #_t B is PSD.
CheckReport check_amgm(const ComplexMatrix& a, const ComplexMatrix& b, double t, const VerifyOptions& opts = {});

/// s^r(A #_t B) <=log s^r(f_t) <=log s(g_{r,t}) <=log s(A^{(1-t)r} B^{tr}).
CheckReport check_bhatia_grover(const ComplexMatrix& a, const ComplexMatrix& b, double t, double r,
                                const VerifyOptions& opts = {});

using MatrixPair = std::pair<ComplexMatrix, ComplexMatrix>;

/// Norm chain for positive commuting pairs (A_j, B_j), the r = 2, 3 pre-chains
/// and the convexity step for r = 1, 2, 3.
CheckReport check_audenaert_chain(const std::vector<MatrixPair>& pairs, const VerifyOptions& opts = {});

/// Polar-rotated Gram-sum chain for arbitrary pairs; r drives the additional
/// log-majorization chain on the rotated block (t = 1/2).
CheckReport check_polar_sum_chain(const std::vector<MatrixPair>& pairs, double r = 2.0,
                                  const VerifyOptions& opts = {});

/// Prefix products of |A+B|^r against (I+|A|^2)^{r/2}, (I+|B|^2)^{r/2} and, for
/// 1 <= r <= 2, against I+|A|^r, I+|B|^r.  Hermitian inputs add the improvement chain.
CheckReport check_sum_power(const ComplexMatrix& a, const ComplexMatrix& b, double r, const VerifyOptions& opts = {});

/// s^2(A o B) against s((I o A^2)(I o B^2)) and the norm chain down to (||A|| ||B||)^2.
CheckReport check_hadamard_pair(const ComplexMatrix& a, const ComplexMatrix& b, const VerifyOptions& opts = {});

/// s^2(A_1 o ... o A_m) against s(|A_1|^2 o ... o |A_m|^2), prefix products and norms.
CheckReport check_hadamard_multi(const std::vector<ComplexMatrix>& mats, const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Registry: uniform invocation used by campaigns and witness replay.

struct CheckInfo {
  std::string_view name;
  bool uses_t;
  bool uses_r;
};

inline constexpr CheckInfo kCheckRegistry[] = {
    {"amgm", true, false},
    {"audenaert_chain", false, false},
    {"bhatia_grover", true, true},
    {"hadamard_multi", false, false},
    {"hadamard_pair", false, false},
    {"half_index", true, false},
    {"lemma_geodesic_ppt", true, false},
    {"log_majorization_chain", true, true},
    {"norm_inequality", true, true},
    {"polar_sum_chain", false, true},
    {"sum_power", false, true},
};

const CheckInfo* find_check(std::string_view name);

/// Everything needed to re-run one check.  Matrix layout per check:
///   block checks (lemma, chain, norm, half_index): [A, X, B]
///   amgm, bhatia_grover, sum_power, hadamard_pair:  [A, B]
///   audenaert_chain, polar_sum_chain:               [A_1, B_1, A_2, B_2, ...]
///   hadamard_multi:                                 [A_1, ..., A_m]
struct CheckInput {
  std::string check;
  std::vector<ComplexMatrix> matrices;
  double t = 0.5;
  double r = 1.0;
};

CheckReport run_check(const CheckInput& input, const VerifyOptions& opts);

}  // namespace pptlab

#endif  // PPTLAB_VERIFIER_HPP
