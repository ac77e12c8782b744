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

#include "pptlab/report_io.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pptlab {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json optional_number(const std::optional<double>& v) { return v ? number_to_json(*v) : Json(nullptr); }

std::string format_margin(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Row {
  std::string check;
  long trials;
  long passes;
  long failures;
  long inconclusive;
  double min_margin;
  std::string witness;
};

std::vector<Row> rows_of(const Json& report) {
  if (!report.is_object()) parse_error("report is not a JSON object");
  if (field(report, "format") != kReportFormat) parse_error("unsupported report format");
  const Json& results = field(report, "results");
  if (!results.is_array()) parse_error("'results' is not an array");
  std::vector<Row> rows;
  try {
    for (const auto& r : results) {
      Row row{field(r, "check").get<std::string>(),    field(r, "trials").get<long>(),
              field(r, "passes").get<long>(),          field(r, "failures").get<long>(),
              field(r, "inconclusive").get<long>(),    number_from_json(field(r, "min_margin")),
              ""};
      const Json& w = field(r, "argmin_witness");
      if (!w.is_null()) row.witness = w.get<std::string>();
      if (row.trials != row.passes + row.failures + row.inconclusive) {
        parse_error("row '" + row.check + "': trials != passes + failures + inconclusive");
      }
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed result row: ") + e.what());
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.check < b.check; });
  return rows;
}

double pass_rate(long passes, long failures) {
  const long decided = passes + failures;
  return decided == 0 ? 1.0 : static_cast<double>(passes) / static_cast<double>(decided);
}

}  // namespace

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_error("expected a number");
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return Json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto n = field(j, "dim").get<Eigen::Index>();
    const Json& rows = field(j, "entries");
    if (n < 1 || !rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) parse_error("matrix shape mismatch");
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Json& row = rows[i];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) parse_error("matrix row length mismatch");
      for (Eigen::Index k = 0; k < n; ++k) {
        const Json& e = row[k];
        if (!e.is_array() || e.size() != 2) parse_error("matrix entry is not a [re, im] pair");
        m(i, k) = {e[0].get<double>(), e[1].get<double>()};
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed matrix: ") + e.what());
  }
}

Json check_report_to_json(const CheckReport& rep) {
  Json stages = Json::array();
  for (const auto& st : rep.stages) {
    Json entries = Json::array();
    for (const auto& e : st.entries) {
      entries.push_back({{"label", e.label},
                         {"lhs", number_to_json(e.lhs)},
                         {"rhs", number_to_json(e.rhs)},
                         {"margin", number_to_json(e.margin)},
                         {"normalized", number_to_json(e.normalized)}});
    }
    stages.push_back({{"name", st.name},
                      {"kind", to_string(st.kind)},
                      {"asserted", st.asserted},
                      {"min_normalized", number_to_json(st.min_normalized())},
                      {"entries", std::move(entries)}});
  }
  Json params{{"dim", rep.params.dim},
              {"t", optional_number(rep.params.t)},
              {"r", optional_number(rep.params.r)},
              {"m", rep.params.m ? Json(*rep.params.m) : Json(nullptr)},
              {"family", rep.params.family}};
  return Json{{"check", rep.check_name},
              {"verdict", to_string(rep.verdict)},
              {"passed", rep.passed()},
              {"min_margin", number_to_json(rep.min_margin)},
              {"tolerance", number_to_json(rep.tolerance)},
              {"params", std::move(params)},
              {"note", rep.note},
              {"witness_ref", rep.witness_ref ? Json(*rep.witness_ref) : Json(nullptr)},
              {"stages", std::move(stages)}};
}

Json witness_to_json(const Witness& w) {
  Json mats = Json::array();
  for (const auto& m : w.input.matrices) mats.push_back(matrix_to_json(m));
  Json gammas = Json::array();
  for (const auto& g : w.gammas) gammas.push_back(g.values());
  return Json{{"format", kWitnessFormat},
              {"check", w.check},
              {"trial_id", w.trial_id},
              {"sampler", w.sampler},
              {"tol", w.tol},
              {"input", {{"t", w.input.t}, {"r", w.input.r}, {"matrices", std::move(mats)}}},
              {"gammas", std::move(gammas)},
              {"report", check_report_to_json(w.report)}};
}

Witness witness_from_json(const Json& j) {
  try {
    if (field(j, "format") != kWitnessFormat) parse_error("unsupported witness format");
    Witness w;
    w.check = field(j, "check").get<std::string>();
    w.trial_id = field(j, "trial_id").get<std::string>();
    w.sampler = field(j, "sampler").get<std::string>();
    w.tol = field(j, "tol").get<double>();
    const Json& in = field(j, "input");
    w.input.check = w.check;
    w.input.t = field(in, "t").get<double>();
    w.input.r = field(in, "r").get<double>();
    for (const auto& m : field(in, "matrices")) w.input.matrices.push_back(matrix_from_json(m));
    for (const auto& g : field(j, "gammas")) w.gammas.emplace_back(g.get<std::vector<double>>());
    const Json& rep = field(j, "report");
    w.report.check_name = field(rep, "check").get<std::string>();
    w.report.min_margin = number_from_json(field(rep, "min_margin"));
    w.report.tolerance = number_from_json(field(rep, "tolerance"));
    const auto verdict = field(rep, "verdict").get<std::string>();
    w.report.verdict = verdict == "pass" ? Verdict::Pass : verdict == "fail" ? Verdict::Fail : Verdict::Inconclusive;
    return w;
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed witness: ") + e.what());
  }
}

Json environment_fingerprint() {
  Json env;
  env["library"] = "pptlab 0.1.0";
#if defined(__clang__)
  env["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  env["compiler"] = std::string("gcc ") + __VERSION__;
#else
  env["compiler"] = "unknown";
#endif
  env["cxx_standard"] = static_cast<long>(__cplusplus);
  env["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
  env["working_precision_mantissa_bits"] = LDBL_MANT_DIG;
  env["pointer_bits"] = static_cast<int>(8 * sizeof(void*));
  return env;
}

Json campaign_to_json(const Campaign& c) {
  return Json{{"seed", c.seed},
              {"dims", c.dims},
              {"trials", c.trials_per_cell},
              {"t-grid", c.t_grid},
              {"r-grid", c.r_grid},
              {"tol", c.tol},
              {"checks", c.resolved_checks()},
              {"sampler-mix", c.mix ? c.mix->to_string() : std::string("default")},
              {"jobs", c.jobs},
              {"include-necessity-suite", c.include_necessity_suite}};
}

Json result_to_json(const CampaignResult& result) {
  Json rows = Json::array();
  long trials = 0;
  long failures = 0;
  long inconclusive = 0;
  for (const auto& a : result.checks) {
    Json stages = Json::array();
    for (const auto& s : a.stages) {
      stages.push_back({{"name", s.name}, {"min_normalized", number_to_json(s.min_normalized)}, {"asserted", s.asserted}});
    }
    Json row{{"check", a.check},
             {"trials", a.trials},
             {"passes", a.passes},
             {"failures", a.failures},
             {"inconclusive", a.inconclusive},
             {"pass_rate", pass_rate(a.passes, a.failures)},
             {"min_margin", number_to_json(a.min_margin)},
             {"argmin_trial", a.argmin_trial},
             {"argmin_witness", a.argmin_witness ? Json(*a.argmin_witness) : Json(nullptr)},
             {"stages", std::move(stages)}};
    if (result.mode == "hunt") row["violation_rate"] = 1.0 - pass_rate(a.passes, a.failures);
    rows.push_back(std::move(row));
    trials += a.trials;
    failures += a.failures;
    inconclusive += a.inconclusive;
  }
  Json witnesses = Json::array();
  for (const auto& w : result.witnesses) witnesses.push_back(w.file_name());
  return Json{{"format", kReportFormat},
              {"mode", result.mode},
              {"config", campaign_to_json(result.config)},
              {"environment", environment_fingerprint()},
              {"summary",
               {{"checks", result.checks.size()},
                {"trials", trials},
                {"failures", failures},
                {"inconclusive", inconclusive},
                {"all_passed", failures == 0}}},
              {"results", std::move(rows)},
              {"witnesses", std::move(witnesses)},
              {"warnings", result.warnings}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::IoError, path + ": write failed");
}

void write_campaign_outputs(const CampaignResult& result, const std::string& report_path) {
  const std::filesystem::path dir = std::filesystem::path(report_path).parent_path();
  write_json_file(report_path, result_to_json(result));
  for (const auto& w : result.witnesses) write_json_file((dir / w.file_name()).string(), witness_to_json(w));
}

CheckReport replay_witness(const Witness& w) {
  VerifyOptions opts;
  opts.tol = w.tol;
  opts.norms.gammas = w.gammas;
  return run_check(w.input, opts);
}

std::string render_table(const Json& report) {
  const auto rows = rows_of(report);
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-26s %8s %10s %9s %12s %12s  %s\n", "check", "trials", "pass_rate", "failures",
                "inconclusive", "min_margin", "worst_witness");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-26s %8ld %9.2f%% %9ld %12ld %12s  %s\n", r.check.c_str(), r.trials,
                  100.0 * pass_rate(r.passes, r.failures), r.failures, r.inconclusive, format_margin(r.min_margin).c_str(),
                  r.witness.empty() ? "-" : r.witness.c_str());
    os << line;
  }
  return os.str();
}

std::string render_csv(const Json& report) {
  const auto rows = rows_of(report);
  std::ostringstream os;
  os << "check,trials,passes,failures,inconclusive,pass_rate,min_margin,worst_witness\n";
  for (const auto& r : rows) {
    os << r.check << ',' << r.trials << ',' << r.passes << ',' << r.failures << ',' << r.inconclusive << ','
       << pass_rate(r.passes, r.failures) << ',' << format_margin(r.min_margin) << ',' << r.witness << '\n';
  }
  return os.str();
}

}  // namespace pptlab
