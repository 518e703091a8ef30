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

#include "scimob/demography.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "scimob/error.h"
#include "scimob/names.h"

namespace scimob {

std::string_view GenderName(Gender g) {
  switch (g) {
    case Gender::kMale: return "Male";
    case Gender::kFemale: return "Female";
    case Gender::kUnknown: return "Unknown";
  }
  return "Unknown";
}

Gender ParseGender(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "male" || lower == "m") return Gender::kMale;
  if (lower == "female" || lower == "f") return Gender::kFemale;
  if (lower == "unknown" || lower == "n/a" || lower.empty()) return Gender::kUnknown;
  throw Error(ErrorKind::kParse, "unknown gender label " + std::string(name));
}

std::string_view AgeBucketLabel(AgeBucket b) {
  switch (b) {
    case AgeBucket::k0To5: return "0-5";
    case AgeBucket::k6To10: return "6-10";
    case AgeBucket::k11To15: return "11-15";
    case AgeBucket::k16To20: return "16-20";
    case AgeBucket::k21Plus: return "21+";
  }
  return "?";
}

AgeBucket ParseAgeBucket(std::string_view label) {
  for (AgeBucket b : kAllAgeBuckets) {
    if (AgeBucketLabel(b) == label) return b;
  }
  throw Error(ErrorKind::kParse, "unknown age bucket " + std::string(label));
}

AgeBucket AgeBucketOf(int age) {
  if (age < 0) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("negative academic age {}", age));
  }
  if (age <= 5) return AgeBucket::k0To5;
  if (age <= 10) return AgeBucket::k6To10;
  if (age <= 15) return AgeBucket::k11To15;
  if (age <= 20) return AgeBucket::k16To20;
  return AgeBucket::k21Plus;
}

int AcademicAge(int first_pub_year, int reference_year) {
  if (reference_year < first_pub_year) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("reference year {} precedes first publication {}",
                            reference_year, first_pub_year));
  }
  return reference_year - first_pub_year;
}

std::string_view AgeReferenceName(AgeReference r) {
  return r == AgeReference::kEvent ? "event" : "window-end";
}

AgeReference ParseAgeReference(std::string_view name) {
  if (name == "event") return AgeReference::kEvent;
  if (name == "window-end") return AgeReference::kWindowEnd;
  throw Error(ErrorKind::kInvalidArgument,
              "age reference must be 'event' or 'window-end', got " + std::string(name));
}

namespace {

std::vector<ClusterPublication> NonEmptyPublications(const AuthorCluster &cluster,
                                                     const RecordIndex &index) {
  auto pubs = PublicationsOf(cluster, index);
  if (pubs.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "cluster " + cluster.cluster_id + " has no publications");
  }
  return pubs;
}

}  // namespace

int FirstPublicationYear(const AuthorCluster &cluster, const RecordIndex &index) {
  return NonEmptyPublications(cluster, index).front().record->year;
}

CountrySet AcademicOrigin(const AuthorCluster &cluster, const RecordIndex &index) {
  return NonEmptyPublications(cluster, index).front().countries;
}

CountrySet GenderOrigin(const AuthorCluster &cluster, const RecordIndex &index) {
  const auto pubs = NonEmptyPublications(cluster, index);
  std::map<CountryCode, size_t> frequency;
  for (const auto &p : pubs) {
    for (const auto &c : p.countries) ++frequency[c];
  }
  size_t best = 0;
  std::vector<CountryCode> modal;
  CountrySet linked;
  for (const auto &[country, n] : frequency) {
    linked.insert(country);
    if (n > best) {
      best = n;
      modal = {country};
    } else if (n == best) {
      modal.push_back(country);
    }
  }
  if (modal.size() == 1 && pubs.front().countries.count(modal.front())) {
    return {modal.front()};
  }
  return linked;
}

std::string GenderLookupName(std::string_view first_name) {
  if (FullForename(first_name).empty()) return {};
  std::string token;
  for (char c : FoldDiacritics(first_name)) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      token.push_back(c);
    } else if (!token.empty() && c != '\'') {
      if (token.size() > 1) return token;
      token.clear();
    }
  }
  return token.size() > 1 ? token : std::string();
}

// ---------------------------------------------------------------------------
// Local table

std::unique_ptr<LocalGenderTable> LocalGenderTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open gender table " + path);
  return Parse(in);
}

std::unique_ptr<LocalGenderTable> LocalGenderTable::Parse(std::istream &in) {
  auto table = std::make_unique<LocalGenderTable>();
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 4) {
      throw Error(ErrorKind::kParse,
                  fmt::format("gender table line {}: expected 4 columns", line_no));
    }
    double confidence = 0;
    try {
      size_t used = 0;
      confidence = std::stod(cols[3], &used);
      if (used != cols[3].size()) throw std::invalid_argument(cols[3]);
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::kParse,
                  fmt::format("gender table line {}: bad confidence", line_no));
    }
    if (confidence < 0 || confidence > 1) {
      throw Error(ErrorKind::kParse,
                  fmt::format("gender table line {}: confidence outside [0,1]", line_no));
    }
    table->Add(cols[0], cols[1], {ParseGender(cols[2]), confidence});
  }
  return table;
}

void LocalGenderTable::Add(std::string_view first_name, const std::string &country,
                           GenderGuess guess) {
  rows_[{GenderLookupName(first_name), country}] = guess;
}

std::optional<GenderGuess> LocalGenderTable::Lookup(const std::string &first_name,
                                                    const CountryCode &country) {
  const std::string key = GenderLookupName(first_name);
  if (key.empty()) return std::nullopt;
  if (auto it = rows_.find({key, country}); it != rows_.end()) return it->second;
  if (auto it = rows_.find({key, "*"}); it != rows_.end()) return it->second;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Inference

GenderInference InferGender(std::string_view first_name, const CountrySet &origin,
                            std::span<GenderProvider *const> providers,
                            double min_confidence) {
  GenderInference result;
  const std::string name(first_name);
  if (GenderLookupName(name).empty()) return result;

  // An empty origin still gets one country-agnostic query.
  std::vector<CountryCode> countries(origin.begin(), origin.end());
  if (countries.empty()) countries.push_back("*");

  std::set<Gender> accepted;
  size_t failures = 0;
  size_t attempts = 0;
  for (const auto &country : countries) {
    for (GenderProvider *provider : providers) {
      ++attempts;
      std::optional<GenderGuess> guess;
      try {
        guess = provider->Lookup(name, country);
      } catch (const ProviderUnavailable &e) {
        ++failures;
        result.diagnostics.push_back(
            fmt::format("provider {} unavailable: {}", provider->name(), e.what()));
        continue;
      }
      if (guess && guess->gender != Gender::kUnknown && guess->confidence >= min_confidence) {
        accepted.insert(guess->gender);
        break;
      }
    }
  }
  if (attempts > 0 && failures == attempts) {
    result.diagnostics.push_back("warning: every gender provider failed for " + name);
  }
  if (accepted.size() == 1) result.gender = *accepted.begin();
  return result;
}

std::string RepresentativeForename(const AuthorCluster &cluster, const RecordIndex &index) {
  std::string best_full;
  std::string best_raw;
  std::string fallback;
  for (const auto &pub : PublicationsOf(cluster, index)) {
    for (size_t m : pub.mention_indices) {
      const std::string &raw = pub.record->mentions[m].first_name;
      if (fallback.empty()) fallback = raw;
      const std::string full = FullForename(raw);
      if (full.empty()) continue;
      if (full.size() > best_full.size() ||
          (full.size() == best_full.size() && raw < best_raw)) {
        best_full = full;
        best_raw = raw;
      }
    }
  }
  return best_raw.empty() ? fallback : best_raw;
}

ResearcherDemographics AttributeDemographics(const AuthorCluster &cluster,
                                             const RecordIndex &index,
                                             const MobilityClassification &mobility,
                                             std::span<GenderProvider *const> providers,
                                             const DemographyOptions &options,
                                             std::vector<std::string> *diagnostics) {
  ResearcherDemographics d;
  d.cluster_id = cluster.cluster_id;
  d.first_name = RepresentativeForename(cluster, index);
  d.first_pub_year = FirstPublicationYear(cluster, index);
  d.academic_origin = AcademicOrigin(cluster, index);
  d.gender_origin = GenderOrigin(cluster, index);

  d.reference_year = options.window.end_year;
  if (options.age_reference == AgeReference::kEvent &&
      mobility.typology == Typology::kMigrant && !mobility.events.empty()) {
    d.reference_year = mobility.events.front().year;
  }
  d.academic_age = AcademicAge(d.first_pub_year, d.reference_year);
  d.age_bucket = AgeBucketOf(d.academic_age);

  auto inference = InferGender(d.first_name, d.gender_origin, providers, options.min_confidence);
  d.gender = inference.gender;
  if (diagnostics) {
    for (auto &msg : inference.diagnostics) {
      diagnostics->push_back(cluster.cluster_id + ": " + std::move(msg));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Files

namespace {

std::string JoinCountries(const CountrySet &set) {
  std::string out;
  for (const auto &c : set) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

CountrySet SplitCountries(const std::string &text) {
  CountrySet out;
  std::stringstream ss(text);
  std::string c;
  while (std::getline(ss, c, ',')) {
    if (!c.empty()) out.insert(c);
  }
  return out;
}

std::string Sanitize(std::string s) {
  std::replace(s.begin(), s.end(), '\t', ' ');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

constexpr const char *kDemographicsHeader =
    "cluster_id\tfirst_name\tfirst_pub_year\tacademic_origin\tgender_origin\t"
    "reference_year\tacademic_age\tage_bucket\tgender";

}  // namespace

void WriteDemographics(std::ostream &out, std::span<const ResearcherDemographics> rows) {
  out << kDemographicsHeader << '\n';
  for (const auto &d : rows) {
    out << d.cluster_id << '\t' << Sanitize(d.first_name) << '\t' << d.first_pub_year << '\t'
        << JoinCountries(d.academic_origin) << '\t' << JoinCountries(d.gender_origin) << '\t'
        << d.reference_year << '\t' << d.academic_age << '\t' << AgeBucketLabel(d.age_bucket)
        << '\t' << GenderName(d.gender) << '\n';
  }
}

std::vector<ResearcherDemographics> ReadDemographics(std::istream &in) {
  std::vector<ResearcherDemographics> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == kDemographicsHeader) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 9) {
      throw Error(ErrorKind::kParse, fmt::format("demographics line {}: expected 9 columns", line_no));
    }
    try {
      ResearcherDemographics d;
      d.cluster_id = cols[0];
      d.first_name = cols[1];
      d.first_pub_year = std::stoi(cols[2]);
      d.academic_origin = SplitCountries(cols[3]);
      d.gender_origin = SplitCountries(cols[4]);
      d.reference_year = std::stoi(cols[5]);
      d.academic_age = std::stoi(cols[6]);
      d.age_bucket = ParseAgeBucket(cols[7]);
      d.gender = ParseGender(cols[8]);
      out.push_back(std::move(d));
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::kParse, fmt::format("demographics line {}: bad number", line_no));
    }
  }
  return out;
}

}  // namespace scimob
