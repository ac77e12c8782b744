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

#ifndef PPTLAB_REPORT_IO_HPP
#define PPTLAB_REPORT_IO_HPP

// JSON encoding of matrices, check reports, witnesses and campaign results.
// Matrices are {"dim": n, "entries": rows of [re, im] pairs}; non-finite
// numbers are written as the strings "inf", "-inf" and "nan".

#include <string>

#include <nlohmann/json.hpp>

#include "pptlab/campaign.hpp"

namespace pptlab {

using Json = nlohmann::json;

inline constexpr const char* kReportFormat = "pptlab-report/1";
inline constexpr const char* kWitnessFormat = "pptlab-witness/1";

Json number_to_json(double v);
double number_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json check_report_to_json(const CheckReport& rep);
Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

/// Compiler, library and numeric-type facts; nothing time- or host-dependent.
Json environment_fingerprint();
Json campaign_to_json(const Campaign& c);
Json result_to_json(const CampaignResult& result);

/// Throws IoError when the file cannot be read, ParseError when it is not JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Writes the report to `report_path` and every witness next to it.
void write_campaign_outputs(const CampaignResult& result, const std::string& report_path);

/// Re-runs the witnessed check with its recorded tolerance and gamma family.
CheckReport replay_witness(const Witness& w);

/// One row per check sorted by name.  Throws ParseError on a malformed report.
std::string render_table(const Json& report);
std::string render_csv(const Json& report);

}  // namespace pptlab

#endif  // PPTLAB_REPORT_IO_HPP
