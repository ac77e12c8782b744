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

#ifndef PPTLAB_CAMPAIGN_HPP
#define PPTLAB_CAMPAIGN_HPP

// Seeded randomized campaigns over the check registry, their configuration
// (flags and a flat key = value file share one key set) and aggregation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pptlab/sampling.hpp"
#include "pptlab/verifier.hpp"

namespace pptlab {

/// One weighted sampler variant.  Names are the PPT kinds
/// (hermitian_offdiag, polar_rotated, rejection_general, gram_sum,
/// commuting_pairs) or the non-PPT kinds used by hunting (bell, psd_general).
struct MixEntry {
  std::string kind;
  double weight = 0.0;
};

struct SamplerMix {
  std::vector<MixEntry> entries;

  /// "name:weight,name:weight".  Weights are positive; they need not sum to 1.
  static SamplerMix parse(const std::string& text);
  std::string to_string() const;
  bool has_ppt_kind() const;
  bool has_non_ppt_kind() const;
  /// Picks the entry at cumulative fraction u in [0, 1).
  const MixEntry& pick(double u) const;
};

SamplerMix default_verify_mix();
SamplerMix default_hunt_mix();

struct Campaign {
  std::uint64_t seed = 0;
  std::vector<int> dims{2, 3, 5, 8};
  int trials_per_cell = 200;
  std::vector<double> t_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> r_grid{0.5, 1.0, 2.0};
  double tol = 1e-8;
  std::vector<std::string> checks;  // empty means every registered check
  std::optional<SamplerMix> mix;    // unset means the mode's default
  int jobs = 1;
  std::string out = "report.json";
  bool include_necessity_suite = false;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
  std::vector<std::string> resolved_checks() const;
};

/// Key/value pairs with their 1-based source line, as read from a config file.
struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigMap = std::map<std::string, ConfigEntry>;

/// Parses "key = value" lines; '#' starts a comment.  Errors name the line.
ConfigMap parse_config_text(const std::string& text, const std::string& source);
ConfigMap load_config_file(const std::string& path);

/// Applies one key (a flag name without the leading dashes) to the campaign.
/// `where` prefixes error messages, e.g. "run.cfg:4" or "--dims".
void apply_setting(Campaign& c, const std::string& key, const std::string& value, const std::string& where);
void apply_config(Campaign& c, const ConfigMap& map, const std::string& source);

/// Seed from PPT_LAB_SEED when set, ConfigError when unparsable.
std::optional<std::uint64_t> seed_from_env();

struct StageSummary {
  std::string name;
  double min_normalized = 0.0;
  bool asserted = true;
};

/// A failing (or, when hunting, extremal) trial with everything needed to replay it.
struct Witness {
  std::string check;
  std::string trial_id;
  std::string sampler;
  CheckInput input;
  double tol = 0.0;
  std::vector<GammaWeights> gammas;
  CheckReport report;

  std::string file_name() const;
};

struct CheckAggregate {
  std::string check;
  long trials = 0;
  long passes = 0;
  long failures = 0;
  long inconclusive = 0;
  double min_margin = 0.0;  // over non-inconclusive trials; +inf when none
  std::string argmin_trial;
  std::optional<std::string> argmin_witness;
  std::vector<StageSummary> stages;
};

struct CampaignResult {
  std::string mode;  // "verify" or "hunt"
  Campaign config;
  std::vector<CheckAggregate> checks;
  std::vector<Witness> witnesses;
  std::vector<std::string> warnings;

  long total_failures() const;
};

/// Witness files kept per check; later failures are counted but not written.
inline constexpr int kMaxWitnessesPerCheck = 20;

CampaignResult run_verify_campaign(const Campaign& c);

/// Runs the block checks on PSD blocks that are not PPT.  Failures here are
/// violations of the inequality, recorded as findings.
CampaignResult run_hunt_campaign(const Campaign& c);

/// Half-index bound on the regularized Bell block, expected to fail.
Witness necessity_witness(double tol);

}  // namespace pptlab

#endif  // PPTLAB_CAMPAIGN_HPP
