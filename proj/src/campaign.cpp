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

#include "pptlab/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace pptlab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ConfigError, where + ": " + what);
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) config_error(where, "expected a number, got '" + text + "'");
  return v;
}

long long parse_int(const std::string& text, const std::string& where) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) config_error(where, "expected an integer, got '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& where) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    config_error(where, "expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  config_error(where, "expected true or false, got '" + text + "'");
}

bool is_non_ppt_name(const std::string& name) { return name == "bell" || name == "psd_general"; }

bool is_block_check(const std::string& name) {
  return name == "lemma_geodesic_ppt" || name == "log_majorization_chain" || name == "norm_inequality" ||
         name == "half_index";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sampler mix

SamplerMix SamplerMix::parse(const std::string& text) {
  SamplerMix mix;
  for (const auto& item : split_list(text)) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    MixEntry e;
    e.kind = trim(item.substr(0, colon));
    e.weight = colon == std::string::npos ? 1.0 : parse_double(trim(item.substr(colon + 1)), "sampler-mix");
    if (!parse_sample_kind(e.kind) && !is_non_ppt_name(e.kind)) {
      config_error("sampler-mix", "unknown sampler kind '" + e.kind + "'");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      config_error("sampler-mix", "weight of '" + e.kind + "' must be positive");
    }
    mix.entries.push_back(e);
  }
  if (mix.entries.empty()) config_error("sampler-mix", "no sampler kinds given");
  return mix;
}

std::string SamplerMix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < entries.size(); ++i) os << (i ? "," : "") << entries[i].kind << ':' << entries[i].weight;
  return os.str();
}

bool SamplerMix::has_ppt_kind() const {
  return std::any_of(entries.begin(), entries.end(), [](const MixEntry& e) { return !is_non_ppt_name(e.kind); });
}

bool SamplerMix::has_non_ppt_kind() const {
  return std::any_of(entries.begin(), entries.end(), [](const MixEntry& e) { return is_non_ppt_name(e.kind); });
}

const MixEntry& SamplerMix::pick(double u) const {
  double total = 0.0;
  for (const auto& e : entries) total += e.weight;
  double acc = 0.0;
  for (const auto& e : entries) {
    acc += e.weight / total;
    if (u < acc) return e;
  }
  return entries.back();
}

SamplerMix default_verify_mix() {
  return SamplerMix{{{"hermitian_offdiag", 40}, {"polar_rotated", 40}, {"rejection_general", 20}}};
}

SamplerMix default_hunt_mix() { return SamplerMix{{{"bell", 50}, {"psd_general", 50}}}; }

// ---------------------------------------------------------------------------
// Campaign configuration

std::vector<std::string> Campaign::resolved_checks() const {
  if (!checks.empty()) return checks;
  std::vector<std::string> out;
  for (const auto& info : kCheckRegistry) out.emplace_back(info.name);
  return out;
}

void Campaign::validate() const {
  if (dims.empty()) config_error("dims", "at least one dimension is required");
  for (int n : dims) {
    if (n < 1 || n > 64) config_error("dims", "dimension " + std::to_string(n) + " outside [1, 64]");
  }
  if (trials_per_cell < 1) config_error("trials", "must be >= 1");
  if (t_grid.empty()) config_error("t-grid", "at least one t is required");
  for (double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) config_error("t-grid", "t outside [0, 1]");
  }
  if (r_grid.empty()) config_error("r-grid", "at least one r is required");
  for (double r : r_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) config_error("r-grid", "r must be positive");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) config_error("tol", "must be positive");
  for (const auto& name : checks) {
    if (!find_check(name)) config_error("checks", "unknown check '" + name + "'");
  }
  if (jobs < 1) config_error("jobs", "must be >= 1");
  if (out.empty()) config_error("out", "output path is empty");
}

void apply_setting(Campaign& c, const std::string& key, const std::string& raw, const std::string& where) {
  const std::string value = trim(raw);
  if (key == "dims") {
    c.dims.clear();
    for (const auto& item : split_list(value)) c.dims.push_back(static_cast<int>(parse_int(item, where)));
  } else if (key == "trials") {
    c.trials_per_cell = static_cast<int>(parse_int(value, where));
  } else if (key == "seed") {
    c.seed = parse_u64(value, where);
  } else if (key == "t-grid") {
    c.t_grid.clear();
    for (const auto& item : split_list(value)) c.t_grid.push_back(parse_double(item, where));
  } else if (key == "r-grid") {
    c.r_grid.clear();
    for (const auto& item : split_list(value)) c.r_grid.push_back(parse_double(item, where));
  } else if (key == "tol") {
    c.tol = parse_double(value, where);
  } else if (key == "checks") {
    c.checks.clear();
    if (value != "all") {
      for (const auto& item : split_list(value)) {
        if (!find_check(item)) config_error(where, "unknown check '" + item + "'");
        c.checks.push_back(item);
      }
      std::sort(c.checks.begin(), c.checks.end());
      c.checks.erase(std::unique(c.checks.begin(), c.checks.end()), c.checks.end());
    }
  } else if (key == "sampler-mix") {
    try {
      c.mix = SamplerMix::parse(value);
    } catch (const Error& e) {
      config_error(where, e.what());
    }
  } else if (key == "jobs") {
    c.jobs = static_cast<int>(parse_int(value, where));
  } else if (key == "out") {
    c.out = value;
  } else if (key == "include-necessity-suite") {
    c.include_necessity_suite = parse_bool(value, where);
  } else {
    config_error(where, "unknown key '" + key + "'");
  }
}

ConfigMap parse_config_text(const std::string& text, const std::string& source) {
  ConfigMap map;
  std::istringstream is(text);
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) config_error(where, "missing key");
    if (map.count(key)) {
      config_error(where, "duplicate key '" + key + "' (first set on line " + std::to_string(map[key].line) + ")");
    }
    map[key] = ConfigEntry{trim(line.substr(eq + 1)), number};
  }
  return map;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_config(Campaign& c, const ConfigMap& map, const std::string& source) {
  for (const auto& [key, entry] : map) apply_setting(c, key, entry.value, source + ":" + std::to_string(entry.line));
}

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("PPT_LAB_SEED");
  if (!raw || !*raw) return std::nullopt;
  return parse_u64(trim(raw), "PPT_LAB_SEED");
}

std::string Witness::file_name() const { return "witness-" + check + "-" + trial_id + ".json"; }

long CampaignResult::total_failures() const {
  long n = 0;
  for (const auto& c : checks) n += c.failures;
  return n;
}

// ---------------------------------------------------------------------------
// Execution

namespace {

struct Cell {
  std::size_t check = 0;
  int dim = 0;
  int t_idx = -1;
  int r_idx = -1;
  int trial = 0;
};

struct TrialOutcome {
  Verdict verdict = Verdict::Inconclusive;
  double min_margin = 0.0;
  std::vector<StageSummary> stages;
  std::optional<Witness> witness;
};

std::string trial_id(const Cell& cell) {
  std::string id = "n" + std::to_string(cell.dim);
  if (cell.t_idx >= 0) id += "-t" + std::to_string(cell.t_idx);
  if (cell.r_idx >= 0) id += "-r" + std::to_string(cell.r_idx);
  return id + "-" + std::to_string(cell.trial);
}

std::uint64_t cell_stream(const std::string& check, const Cell& cell) {
  std::uint64_t s = fnv1a(check);
  s = combine_stream(s, static_cast<std::uint64_t>(cell.dim));
  s = combine_stream(s, static_cast<std::uint64_t>(cell.t_idx + 1));
  s = combine_stream(s, static_cast<std::uint64_t>(cell.r_idx + 1));
  return combine_stream(s, static_cast<std::uint64_t>(cell.trial));
}

double stream_uniform(const SamplerConfig& cfg, std::uint64_t stream) {
  auto rng = make_engine(cfg, stream);
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Draws a block of the requested kind; PPT kinds whose rejection sampler runs
// dry fall back to hermitian_offdiag, non-PPT ones to bell.
Block draw_block(const SamplerConfig& cfg, std::uint64_t stream, const std::string& kind, std::string& used) {
  used = kind;
  if (kind == "bell") return random_non_ppt_block(cfg, stream, NonPptKind::Bell);
  if (kind == "psd_general") {
    try {
      return random_non_ppt_block(cfg, stream, NonPptKind::PsdGeneral);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RejectionBudgetExceeded) throw;
      used = "psd_general->bell";
      return random_non_ppt_block(cfg, stream, NonPptKind::Bell);
    }
  }
  const PptSampleKind ppt = *parse_sample_kind(kind);
  try {
    return random_ppt_block(cfg, stream, ppt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RejectionBudgetExceeded) throw;
    used = kind + "->hermitian_offdiag";
    return random_ppt_block(cfg, stream, PptSampleKind::HermitianOffdiag);
  }
}

// Inputs satisfying the hypotheses of `check`.  The pair and list checks draw
// m in {1, 2, 3} from the trial number.
CheckInput make_input(const std::string& check, const SamplerConfig& cfg, std::uint64_t stream, const Cell& cell,
                      const SamplerMix& mix, std::string& sampler) {
  CheckInput in;
  in.check = check;
  const int m = 1 + cell.trial % 3;
  const std::uint64_t body = combine_stream(stream, 1);
  auto sub = [&](int j) { return combine_stream(body, static_cast<std::uint64_t>(j)); };
  if (is_block_check(check)) {
    const MixEntry& entry = mix.pick(stream_uniform(cfg, combine_stream(stream, 0)));
    const Block blk = draw_block(cfg, body, entry.kind, sampler);
    in.matrices = {blk.a, blk.x, blk.b};
  } else if (check == "amgm" || check == "bhatia_grover") {
    sampler = "psd_pair";
    in.matrices = {random_psd(cfg, sub(0)), random_psd(cfg, sub(1))};
  } else if (check == "sum_power") {
    const bool herm = cell.trial % 2 == 0;
    sampler = herm ? "hermitian_pair" : "complex_pair";
    in.matrices = herm ? std::vector<ComplexMatrix>{random_hermitian(cfg, sub(0)), random_hermitian(cfg, sub(1))}
                       : std::vector<ComplexMatrix>{random_complex(cfg, sub(0)), random_complex(cfg, sub(1))};
  } else if (check == "hadamard_pair") {
    sampler = "hermitian_pair";
    in.matrices = {random_hermitian(cfg, sub(0)), random_hermitian(cfg, sub(1))};
  } else if (check == "hadamard_multi") {
    sampler = "complex_list";
    for (int j = 0; j < m; ++j) in.matrices.push_back(random_complex(cfg, sub(j)));
  } else if (check == "audenaert_chain") {
    sampler = "commuting_pairs";
    for (int j = 0; j < m; ++j) {
      auto [a, b] = random_commuting_pair(cfg, sub(j));
      in.matrices.push_back(std::move(a));
      in.matrices.push_back(std::move(b));
    }
  } else if (check == "polar_sum_chain") {
    sampler = "complex_pairs";
    for (int j = 0; j < 2 * m; ++j) in.matrices.push_back(random_complex(cfg, sub(j)));
  } else {
    throw Error(ErrorKind::InvalidParam, "no sampler for check '" + check + "'");
  }
  return in;
}

std::vector<Cell> enumerate_cells(const Campaign& c, const std::vector<std::string>& checks) {
  std::vector<Cell> cells;
  for (std::size_t ci = 0; ci < checks.size(); ++ci) {
    const CheckInfo* info = find_check(checks[ci]);
    const int nt = info->uses_t ? static_cast<int>(c.t_grid.size()) : 1;
    const int nr = info->uses_r ? static_cast<int>(c.r_grid.size()) : 1;
    for (int n : c.dims) {
      for (int ti = 0; ti < nt; ++ti) {
        for (int ri = 0; ri < nr; ++ri) {
          for (int k = 0; k < c.trials_per_cell; ++k) {
            cells.push_back({ci, n, info->uses_t ? ti : -1, info->uses_r ? ri : -1, k});
          }
        }
      }
    }
  }
  return cells;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

VerifyOptions options_for(const Campaign& c, int dim) {
  VerifyOptions opts;
  opts.tol = c.tol;
  // One gamma family per dimension, fixed by the seed.
  opts.norms.gammas = random_gamma_weights(SamplerConfig(c.seed, dim), fnv1a("gamma-family"), 20);
  return opts;
}

std::vector<StageSummary> summarize(const CheckReport& rep) {
  std::vector<StageSummary> out;
  for (const auto& st : rep.stages) out.push_back({st.name, st.min_normalized(), st.asserted});
  return out;
}

void merge_stages(std::vector<StageSummary>& into, const std::vector<StageSummary>& from) {
  for (const auto& s : from) {
    auto it = std::find_if(into.begin(), into.end(), [&](const StageSummary& x) { return x.name == s.name; });
    if (it == into.end()) into.push_back(s);
    else if (std::isnan(s.min_normalized) || s.min_normalized < it->min_normalized) it->min_normalized = s.min_normalized;
  }
}

// Reduces outcomes in cell order so the result does not depend on scheduling.
void aggregate(CampaignResult& result, const std::vector<std::string>& checks, const std::vector<Cell>& cells,
               std::vector<TrialOutcome>& outcomes, bool all_failures_witnessed) {
  for (std::size_t ci = 0; ci < checks.size(); ++ci) {
    CheckAggregate agg;
    agg.check = checks[ci];
    agg.min_margin = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> argmin;
    std::vector<std::size_t> failing;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].check != ci) continue;
      const TrialOutcome& o = outcomes[i];
      ++agg.trials;
      if (o.verdict == Verdict::Inconclusive) {
        ++agg.inconclusive;
        continue;
      }
      if (o.verdict == Verdict::Pass) ++agg.passes;
      else {
        ++agg.failures;
        failing.push_back(i);
      }
      merge_stages(agg.stages, o.stages);
      const bool worse = std::isnan(o.min_margin) ? !(argmin && std::isnan(outcomes[*argmin].min_margin))
                                                  : (!argmin || o.min_margin < agg.min_margin);
      if (worse) {
        argmin = i;
        agg.min_margin = o.min_margin;
      }
    }
    if (argmin) agg.argmin_trial = trial_id(cells[*argmin]);
    std::vector<std::size_t> keep;
    if (all_failures_witnessed) {
      for (std::size_t i : failing) {
        if (keep.size() + 1 >= static_cast<std::size_t>(kMaxWitnessesPerCheck)) break;
        keep.push_back(i);
      }
    }
    if (argmin && outcomes[*argmin].witness && std::find(keep.begin(), keep.end(), *argmin) == keep.end()) {
      keep.push_back(*argmin);
    }
    std::sort(keep.begin(), keep.end());
    for (std::size_t i : keep) {
      Witness& w = *outcomes[i].witness;
      w.report.witness_ref = w.file_name();
      if (i == argmin) agg.argmin_witness = w.file_name();
      result.witnesses.push_back(std::move(w));
    }
    if (all_failures_witnessed && failing.size() > keep.size()) {
      result.warnings.push_back(agg.check + ": " + std::to_string(failing.size() - keep.size()) +
                                " failing trials beyond the witness limit were not serialized");
    }
    result.checks.push_back(std::move(agg));
  }
}

CampaignResult run_cells(const Campaign& c, const std::vector<std::string>& checks, const SamplerMix& mix,
                         const std::string& mode) {
  CampaignResult result;
  result.mode = mode;
  result.config = c;
  result.config.mix = mix;
  result.config.checks = checks;

  std::map<int, VerifyOptions> opts_by_dim;
  for (int n : c.dims) opts_by_dim.emplace(n, options_for(c, n));

  const auto cells = enumerate_cells(c, checks);
  std::vector<TrialOutcome> outcomes(cells.size());
  const bool hunting = mode == "hunt";
  parallel_for(cells.size(), c.jobs, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const std::string& check = checks[cell.check];
    const SamplerConfig cfg(c.seed, cell.dim);
    const std::uint64_t stream = cell_stream(check, cell);
    std::string sampler;
    CheckInput in = make_input(check, cfg, stream, cell, mix, sampler);
    if (cell.t_idx >= 0) in.t = c.t_grid[cell.t_idx];
    if (cell.r_idx >= 0) in.r = c.r_grid[cell.r_idx];
    const VerifyOptions& opts = opts_by_dim.at(cell.dim);
    CheckReport rep = run_check(in, opts);
    TrialOutcome& o = outcomes[i];
    o.verdict = rep.verdict;
    o.min_margin = rep.min_margin;
    o.stages = summarize(rep);
    if (rep.verdict == Verdict::Fail) {
      o.witness = Witness{check, trial_id(cell), sampler, std::move(in), c.tol, opts.norms.gammas, std::move(rep)};
    }
  });
  aggregate(result, checks, cells, outcomes, !hunting);
  return result;
}

}  // namespace

Witness necessity_witness(double tol) {
  const Block blk = bell_block(2, 1e-8);
  Witness w;
  w.check = "half_index";
  w.trial_id = "necessity";
  w.sampler = "bell_block(n=2,eps=1e-8)";
  w.input.check = "half_index";
  w.input.matrices = {blk.a, blk.x, blk.b};
  w.input.t = 0.5;
  w.tol = tol;
  VerifyOptions opts;
  opts.tol = tol;
  w.report = run_check(w.input, opts);
  return w;
}

CampaignResult run_verify_campaign(const Campaign& c) {
  c.validate();
  const SamplerMix mix = c.mix.value_or(default_verify_mix());
  if (!mix.has_ppt_kind() || mix.has_non_ppt_kind()) {
    config_error("sampler-mix", "verify accepts PPT sampler kinds only; non-PPT kinds belong to hunt");
  }
  CampaignResult result = run_cells(c, c.resolved_checks(), mix, "verify");
  if (c.include_necessity_suite) {
    Witness w = necessity_witness(c.tol);
    CheckAggregate agg;
    agg.check = "half_index.necessity";
    agg.trials = 1;
    agg.passes = w.report.passed() ? 1 : 0;
    agg.failures = w.report.verdict == Verdict::Fail ? 1 : 0;
    agg.inconclusive = w.report.verdict == Verdict::Inconclusive ? 1 : 0;
    agg.min_margin = w.report.min_margin;
    agg.argmin_trial = w.trial_id;
    agg.stages = summarize(w.report);
    if (agg.failures) {
      w.report.witness_ref = w.file_name();
      agg.argmin_witness = w.file_name();
      result.witnesses.push_back(std::move(w));
    }
    result.checks.push_back(std::move(agg));
  }
  return result;
}

CampaignResult run_hunt_campaign(const Campaign& c) {
  c.validate();
  const SamplerMix mix = c.mix.value_or(default_hunt_mix());
  std::vector<std::string> checks;
  std::vector<std::string> skipped;
  for (const auto& name : c.resolved_checks()) (is_block_check(name) ? checks : skipped).push_back(name);
  if (checks.empty()) config_error("checks", "hunt needs at least one block check");
  CampaignResult result = run_cells(c, checks, mix, "hunt");
  if (!skipped.empty()) {
    std::string list;
    for (const auto& s : skipped) list += (list.empty() ? "" : ",") + s;
    result.warnings.push_back("hunt runs block checks only; skipped " + list);
  }
  if (!mix.has_non_ppt_kind()) {
    result.warnings.push_back("sampler mix contains only PPT kinds; no violations can be expected");
  }
  return result;
}

}  // namespace pptlab
