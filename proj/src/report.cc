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

#include "scimob/report.h"

#include <sstream>

#include <fmt/format.h>

#include "scimob/error.h"

namespace scimob {

namespace {

constexpr const char *kUndefined = "undefined";

std::string Percent(std::optional<double> share, int decimals) {
  return share ? FormatPercent(*share, decimals) : kUndefined;
}

std::string Fixed(std::optional<double> value, int decimals) {
  return value ? FormatFixed(*value, decimals) : kUndefined;
}

std::string Count(size_t n) { return std::to_string(n); }

bool Touches(const CountrySet &countries, const std::set<CountryCode> &scope) {
  for (const auto &c : countries) {
    if (scope.count(c)) return true;
  }
  return false;
}

void AddShareRows(ReportTable &table, const std::string &scope,
                  std::span<const MobilityClassification> classifications) {
  const ShareTable shares = MobilityShares(classifications);
  for (const auto &row : shares.rows) {
    table.rows.push_back({scope, row.label, Count(row.count), FormatPercent(row.total_share, 1),
                          row.mobility_share ? FormatPercent(*row.mobility_share, 0) : ""});
  }
}

std::vector<ReportTable> SharesReport(const ReportInputs &in) {
  ReportTable table{"shares", {}, {"scope", "label", "count", "total_share", "mobility_share"}, {}};
  std::vector<MobilityClassification> all, mena;
  for (const auto &r : in.population) {
    all.push_back(r.mobility);
    if (Touches(r.linked_countries, in.registry->mena_set())) mena.push_back(r.mobility);
  }
  AddShareRows(table, "all", all);
  AddShareRows(table, kMenaRegion, mena);
  table.notes.push_back({"researchers", Count(all.size())});
  table.notes.push_back({"mena_researchers", Count(mena.size())});
  return {table};
}

std::vector<ReportTable> ProfilesReport(const ReportInputs &in, const ReportSettings &settings) {
  ReportTable table{"profiles",
                    {},
                    {"country", "mena", "researchers", "publications", "pubs_per_researcher",
                     "emigrant", "immigrant", "outgoing", "incoming", "emigrant_share",
                     "immigrant_share", "outgoing_share", "incoming_share", "excluded"},
                    {}};
  for (const auto &p : CountryProfiles(in.population, in.records)) {
    const bool excluded = p.directional_total() < settings.min_country_count;
    table.rows.push_back({p.country, in.registry->IsMena(p.country) ? "1" : "0",
                          Count(p.researchers), Count(p.publications),
                          Fixed(p.pubs_per_researcher, 2), Count(p.emigrant), Count(p.immigrant),
                          Count(p.outgoing), Count(p.incoming),
                          Percent(p.Share(Role::kEmigrant), 1),
                          Percent(p.Share(Role::kImmigrant), 1),
                          Percent(p.Share(Role::kOutgoingTraveller), 1),
                          Percent(p.Share(Role::kIncomingTraveller), 1), excluded ? "1" : "0"});
  }
  return {table};
}

std::vector<ReportTable> PyramidReport(const ReportInputs &in) {
  const PopulationPyramid pyramid = BuildPopulationPyramid(in.population, in.registry->mena_set());
  ReportTable table{"pyramid",
                    {},
                    {"age_bucket", "emigrants", "immigrants", "emigrant_share", "immigrant_share"},
                    {}};
  size_t emigrants = 0, immigrants = 0;
  for (AgeBucket b : kAllAgeBuckets) {
    emigrants += pyramid.emigrants.at(b);
    immigrants += pyramid.immigrants.at(b);
  }
  auto share = [](size_t n, size_t total) -> std::optional<double> {
    if (total == 0) return std::nullopt;
    return static_cast<double>(n) / static_cast<double>(total);
  };
  for (AgeBucket b : kAllAgeBuckets) {
    const size_t e = pyramid.emigrants.at(b);
    const size_t i = pyramid.immigrants.at(b);
    table.rows.push_back({std::string(AgeBucketLabel(b)), Count(e), Count(i),
                          Percent(share(e, emigrants), 1), Percent(share(i, immigrants), 1)});
  }
  table.notes.push_back({"scope", kMenaRegion});
  table.notes.push_back({"migrants", Count(pyramid.migrants)});
  table.notes.push_back({"mean_age", Fixed(pyramid.mean_age, 2)});
  table.notes.push_back({"mean_emigrant_age", Fixed(pyramid.mean_emigrant_age, 2)});
  table.notes.push_back({"mean_immigrant_age", Fixed(pyramid.mean_immigrant_age, 2)});
  return {table};
}

std::vector<ReportTable> GenderReport(const ReportInputs &in) {
  const GenderRatioReport ratios = GenderRatios(in.population);
  ReportTable ratio_table{"gender_ratios",
                          {},
                          {"country", "male_all", "female_all", "male_migrants",
                           "female_migrants", "ratio_all", "ratio_migrants", "ratio_of_ratios"},
                          {}};
  for (const auto &row : ratios.rows) {
    ratio_table.rows.push_back({row.country, Count(row.male_all), Count(row.female_all),
                                Count(row.male_migrants), Count(row.female_migrants),
                                Fixed(row.ratio_all, 2), Fixed(row.ratio_migrants, 2),
                                Fixed(row.ratio_of_ratios, 2)});
  }
  ratio_table.notes.push_back({"mean_ratio_of_ratios", Fixed(ratios.mean_ratio_of_ratios, 2)});
  ratio_table.notes.push_back({"undefined_rows", Count(ratios.undefined_rows)});

  ReportTable share_table{"gender_shares",
                          {},
                          {"country", "male", "female", "unknown", "male_share", "female_share",
                           "unknown_share"},
                          {}};
  for (const auto &row : GenderShareTable(in.population, *in.registry)) {
    share_table.rows.push_back({row.country, Count(row.male), Count(row.female),
                                Count(row.unknown), FormatPercent(row.male_share(), 1),
                                FormatPercent(row.female_share(), 1),
                                FormatPercent(row.unknown_share(), 1)});
  }
  return {ratio_table, share_table};
}

std::vector<ReportTable> MenaSharesReport(const ReportInputs &in) {
  ReportTable relations{"mena_relations",
                        {},
                        {"country", "collaboration_share", "mobility_share"},
                        {}};
  for (const auto &row : MenaRelationShares(*in.collaboration, *in.mobility, *in.registry)) {
    relations.rows.push_back(
        {row.country, Percent(row.collaboration, 1), Percent(row.mobility, 1)});
  }

  std::vector<MobilityClassification> classifications;
  for (const auto &r : in.population) classifications.push_back(r.mobility);
  const RegionalFlowMatrix matrix =
      BuildRegionalFlowMatrix(DirectionalMoves(classifications), *in.registry);
  ReportTable partners{"regional_partners",
                       {},
                       {"region", "inbound", "outbound", "inbound_share", "outbound_share",
                        "combined_share"},
                       {}};
  for (const auto &row : PartnerRegionShares(matrix, kMenaRegion)) {
    partners.rows.push_back({row.region, Count(row.inbound), Count(row.outbound),
                             FormatPercent(row.inbound_share, 1),
                             FormatPercent(row.outbound_share, 1),
                             FormatPercent(row.combined_share, 1)});
  }
  partners.notes.push_back({"focus", kMenaRegion});

  ReportTable flows{"regional_flows", {}, {"from_region", "to_region", "researchers"}, {}};
  for (const auto &[pair, n] : matrix.cells()) {
    flows.rows.push_back({pair.first, pair.second, Count(n)});
  }
  return {relations, partners, flows};
}

std::vector<ReportTable> AlluvialReport(const ReportInputs &in, const ReportSettings &settings) {
  ReportTable table{"alluvial",
                    {},
                    {"country", "direction", "gender", "age_bucket", "partner", "count"},
                    {}};
  CountrySet countries;
  for (const auto &r : in.population) {
    for (const auto &[c, _] : r.mobility.roles) countries.insert(c);
  }
  for (const auto &country : countries) {
    for (const auto &row : AlluvialExport(in.population, country, settings.top_k,
                                          settings.alluvial_min_mobile)) {
      table.rows.push_back({row.country, std::string(FlowDirectionName(row.direction)),
                            std::string(GenderName(row.gender)),
                            std::string(AgeBucketLabel(row.age_bucket)), row.partner,
                            Count(row.count)});
    }
  }
  return {table};
}

}  // namespace

std::string_view ReportKindName(ReportKind kind) {
  switch (kind) {
    case ReportKind::kShares: return "shares";
    case ReportKind::kProfiles: return "profiles";
    case ReportKind::kPyramid: return "pyramid";
    case ReportKind::kGender: return "gender";
    case ReportKind::kMenaShares: return "mena-shares";
    case ReportKind::kAlluvial: return "alluvial";
  }
  return "?";
}

ReportKind ParseReportKind(std::string_view name) {
  for (ReportKind kind : kAllReports) {
    if (ReportKindName(kind) == name) return kind;
  }
  throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown report: {}", name));
}

std::vector<ReportKind> ParseReportSelection(std::string_view text) {
  if (text == "all") return {std::begin(kAllReports), std::end(kAllReports)};
  std::set<ReportKind> chosen;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto name = text.substr(start, end - start);
    if (name == "all") return {std::begin(kAllReports), std::end(kAllReports)};
    chosen.insert(ParseReportKind(name));
    start = end + 1;
  }
  return {chosen.begin(), chosen.end()};
}

std::vector<std::pair<std::string, std::string>> ReportSettings::HeaderFields() const {
  return {
      {"window", window.ToString()},
      {"threshold", FormatFixed(threshold, 2)},
      {"age_reference", std::string(AgeReferenceName(age_reference))},
      {"min_confidence", FormatFixed(min_confidence, 2)},
      {"min_country_count", std::to_string(min_country_count)},
      {"top_k", std::to_string(top_k)},
      {"alluvial_min_mobile", std::to_string(alluvial_min_mobile)},
  };
}

std::string CsvField(const std::string &field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string ReportTable::ToCsv(const ReportSettings &settings) const {
  std::ostringstream out;
  out << "# report: " << name << "\n";
  for (const auto &[key, value] : settings.HeaderFields()) out << "# " << key << ": " << value << "\n";
  for (const auto &[key, value] : notes) out << "# " << key << ": " << value << "\n";
  auto line = [&](const std::vector<std::string> &fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << CsvField(fields[i]);
    }
    out << "\n";
  };
  line(columns);
  for (const auto &row : rows) line(row);
  return out.str();
}

nlohmann::ordered_json ReportTable::ToJson() const {
  nlohmann::ordered_json doc;
  doc["notes"] = nlohmann::ordered_json::object();
  for (const auto &[key, value] : notes) doc["notes"][key] = value;
  doc["columns"] = columns;
  doc["rows"] = rows;
  return doc;
}

std::vector<ReportTable> BuildReport(ReportKind kind, const ReportInputs &inputs,
                                     const ReportSettings &settings) {
  if (!inputs.registry || !inputs.collaboration || !inputs.mobility) {
    throw Error(ErrorKind::kInvalidArgument, "report inputs are incomplete");
  }
  switch (kind) {
    case ReportKind::kShares: return SharesReport(inputs);
    case ReportKind::kProfiles: return ProfilesReport(inputs, settings);
    case ReportKind::kPyramid: return PyramidReport(inputs);
    case ReportKind::kGender: return GenderReport(inputs);
    case ReportKind::kMenaShares: return MenaSharesReport(inputs);
    case ReportKind::kAlluvial: return AlluvialReport(inputs, settings);
  }
  return {};
}

std::string ReportBundle(std::span<const ReportTable> tables, const ReportSettings &settings) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto &[key, value] : settings.HeaderFields()) doc["config"][key] = value;
  doc["reports"] = nlohmann::ordered_json::object();
  for (const auto &table : tables) doc["reports"][table.name] = table.ToJson();
  return doc.dump(2) + "\n";
}

}  // namespace scimob
