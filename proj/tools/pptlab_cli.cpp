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

// pptlab: verify, hunt, report and replay.
//
//   pptlab verify --dims 2,3 --trials 100 --seed 42 --checks all --out report.json
//   pptlab hunt --checks half_index --out hunt.json
//   pptlab report report.json
//   pptlab replay witness-half_index-necessity.json
//
// Exit codes: 0 all checks passed, 1 a violation was found, 2 usage,
// configuration, parse or I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "pptlab/campaign.hpp"
#include "pptlab/report_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

// Flag names double as config-file keys.
const char* const kValueKeys[] = {"dims",   "trials", "seed", "t-grid", "r-grid", "tol",
                                  "checks", "sampler-mix", "jobs", "out"};

struct CampaignFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  bool necessity = false;
  CLI::Option* necessity_opt = nullptr;
  std::string config_path;
};

void add_campaign_flags(CLI::App* cmd, CampaignFlags& flags, bool with_necessity) {
  for (const char* key : kValueKeys) {
    flags.options[key] = cmd->add_option(std::string("--") + key, flags.values[key]);
  }
  flags.options["dims"]->description("comma-separated dimensions (default 2,3,5,8)");
  flags.options["trials"]->description("trials per grid cell (default 200)");
  flags.options["seed"]->description("master seed; falls back to PPT_LAB_SEED, then 0");
  flags.options["t-grid"]->description("weights t in [0,1] (default 0,0.25,0.5,0.75,1)");
  flags.options["r-grid"]->description("exponents r > 0 (default 0.5,1,2)");
  flags.options["tol"]->description("normalized margin tolerance (default 1e-8)");
  flags.options["checks"]->description("comma-separated check names or 'all'");
  flags.options["sampler-mix"]->description("kind:weight list, e.g. hermitian_offdiag:40,polar_rotated:60");
  flags.options["jobs"]->description("worker threads (default 1)");
  flags.options["out"]->description("report path; witness files are written beside it");
  if (with_necessity) {
    flags.necessity_opt =
        cmd->add_flag("--include-necessity-suite", flags.necessity, "add the Bell-block half-index probe (expected to fail)");
  }
  cmd->add_option("--config", flags.config_path, "key = value file using the flag names as keys");
}

pptlab::Campaign build_campaign(const CampaignFlags& flags) {
  pptlab::Campaign c;
  pptlab::ConfigMap file;
  if (!flags.config_path.empty()) file = pptlab::load_config_file(flags.config_path);
  const bool seed_given = flags.options.at("seed")->count() > 0 || file.count("seed") > 0;
  if (!seed_given) {
    if (auto env = pptlab::seed_from_env()) c.seed = *env;
  }
  pptlab::apply_config(c, file, flags.config_path);
  for (const char* key : kValueKeys) {
    if (flags.options.at(key)->count() > 0) pptlab::apply_setting(c, key, flags.values.at(key), std::string("--") + key);
  }
  if (flags.necessity_opt && flags.necessity_opt->count() > 0) c.include_necessity_suite = true;
  c.validate();
  return c;
}

void print_warnings(const pptlab::CampaignResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
}

int run_verify(const CampaignFlags& flags) {
  const auto c = build_campaign(flags);
  const auto result = pptlab::run_verify_campaign(c);
  pptlab::write_campaign_outputs(result, c.out);
  print_warnings(result);
  std::cout << pptlab::render_table(pptlab::result_to_json(result));
  std::cout << "report: " << c.out << '\n';
  return result.total_failures() == 0 ? kExitPass : kExitViolation;
}

int run_hunt(const CampaignFlags& flags) {
  const auto c = build_campaign(flags);
  const auto result = pptlab::run_hunt_campaign(c);
  pptlab::write_campaign_outputs(result, c.out);
  print_warnings(result);
  std::cout << pptlab::render_table(pptlab::result_to_json(result));
  std::cout << "violations: " << result.total_failures() << "\nreport: " << c.out << '\n';
  return kExitPass;
}

int run_report(const std::string& path, bool csv) {
  const auto report = pptlab::read_json_file(path);
  std::cout << (csv ? pptlab::render_csv(report) : pptlab::render_table(report));
  return kExitPass;
}

int run_replay(const std::string& path) {
  const auto witness = pptlab::witness_from_json(pptlab::read_json_file(path));
  const auto rep = pptlab::replay_witness(witness);
  std::cout << witness.check << ' ' << witness.trial_id << ": " << pptlab::to_string(rep.verdict)
            << " min_margin=" << rep.min_margin << " (recorded " << witness.report.min_margin << ")\n";
  for (const auto& st : rep.stages) {
    std::cout << "  " << st.name << (st.asserted ? "" : " [logged]") << ": " << st.min_normalized() << '\n';
  }
  return rep.verdict == pptlab::Verdict::Fail ? kExitViolation : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPT block inequality verifier"};
  app.require_subcommand(1);

  CampaignFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run a seeded verification campaign");
  add_campaign_flags(verify, verify_flags, true);

  CampaignFlags hunt_flags;
  auto* hunt = app.add_subcommand("hunt", "run the block checks on PSD blocks that are not PPT");
  add_campaign_flags(hunt, hunt_flags, false);

  std::string report_path;
  bool csv = false;
  auto* report = app.add_subcommand("report", "render a campaign report as a table");
  report->add_option("report", report_path, "report JSON")->required();
  report->add_flag("--csv", csv, "emit CSV instead of a table");

  std::string witness_path;
  auto* replay = app.add_subcommand("replay", "re-run the check recorded in a witness file");
  replay->add_option("witness", witness_path, "witness JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (verify->parsed()) return run_verify(verify_flags);
    if (hunt->parsed()) return run_hunt(hunt_flags);
    if (report->parsed()) return run_report(report_path, csv);
    if (replay->parsed()) return run_replay(witness_path);
  } catch (const pptlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
