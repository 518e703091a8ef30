// Copyright 2026 The scimob Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCIMOB_REPORT_H_
#define SCIMOB_REPORT_H_

#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scimob/corpus.h"
#include "scimob/demography.h"
#include "scimob/indicators.h"
#include "scimob/netmetrics.h"

namespace scimob {

enum class ReportKind { kShares, kProfiles, kPyramid, kGender, kMenaShares, kAlluvial };

inline constexpr ReportKind kAllReports[] = {
    ReportKind::kShares,  ReportKind::kProfiles,   ReportKind::kPyramid,
    ReportKind::kGender,  ReportKind::kMenaShares, ReportKind::kAlluvial,
};

std::string_view ReportKindName(ReportKind kind);
ReportKind ParseReportKind(std::string_view name);

// Accepts a comma-separated list of report names or "all".
std::vector<ReportKind> ParseReportSelection(std::string_view text);

// Settings echoed in every report header.
struct ReportSettings {
  StudyWindow window;
  double threshold = 1.0;
  AgeReference age_reference = AgeReference::kEvent;
  double min_confidence = 0.90;
  size_t min_country_count = 30;
  size_t top_k = 15;
  size_t alluvial_min_mobile = 1000;

  // Ordered key/value pairs, as printed in "# key: value" header lines.
  std::vector<std::pair<std::string, std::string>> HeaderFields() const;
};

struct ReportInputs {
  std::span<const Researcher> population;
  std::span<const PublicationRecord> records;
  const CountryRegistry *registry = nullptr;
  const CountryGraph *collaboration = nullptr;
  const CountryGraph *mobility = nullptr;
};

// One CSV file worth of output.
struct ReportTable {
  std::string name;                  // file stem, e.g. "shares"
  std::vector<std::pair<std::string, std::string>> notes;  // extra header lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string ToCsv(const ReportSettings &settings) const;
  nlohmann::ordered_json ToJson() const;
};

std::vector<ReportTable> BuildReport(ReportKind kind, const ReportInputs &inputs,
                                     const ReportSettings &settings);

// {"config": {...}, "reports": {name: table}} with tables in the order given.
std::string ReportBundle(std::span<const ReportTable> tables, const ReportSettings &settings);

// Quotes a CSV field when it holds a comma, quote or newline.
std::string CsvField(const std::string &field);

}  // namespace scimob

#endif  // SCIMOB_REPORT_H_
