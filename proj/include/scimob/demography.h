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

#ifndef SCIMOB_DEMOGRAPHY_H_
#define SCIMOB_DEMOGRAPHY_H_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimob/corpus.h"
#include "scimob/disambig.h"
#include "scimob/mobility.h"

namespace scimob {

enum class Gender { kMale, kFemale, kUnknown };

std::string_view GenderName(Gender g);
Gender ParseGender(std::string_view name);

enum class AgeBucket { k0To5, k6To10, k11To15, k16To20, k21Plus };

inline constexpr AgeBucket kAllAgeBuckets[] = {AgeBucket::k0To5, AgeBucket::k6To10,
                                               AgeBucket::k11To15, AgeBucket::k16To20,
                                               AgeBucket::k21Plus};

// "0-5", "6-10", "11-15", "16-20", "21+".
std::string_view AgeBucketLabel(AgeBucket b);
AgeBucket ParseAgeBucket(std::string_view label);

// Inclusive edges [0,5] [6,10] [11,15] [16,20] [21,inf). Throws Error on a
// negative age.
AgeBucket AgeBucketOf(int age);

// Throws Error when the reference year precedes the first publication.
int AcademicAge(int first_pub_year, int reference_year);

// Which year academic age is measured at.
enum class AgeReference {
  // Migrants: year of their first mobility event. Everyone else: window end.
  kEvent,
  // Everyone: window end.
  kWindowEnd,
};

std::string_view AgeReferenceName(AgeReference r);
AgeReference ParseAgeReference(std::string_view name);

// Earliest publication year of the cluster among the indexed records.
// Throws Error for a cluster with no indexed publication.
int FirstPublicationYear(const AuthorCluster &cluster, const RecordIndex &index);

// Country set on the earliest publication (ties on year go to the smallest
// pub_id).
CountrySet AcademicOrigin(const AuthorCluster &cluster, const RecordIndex &index);

// Singleton {modal country} when the uniquely most frequent country over
// the cluster's publications is on the first publication; otherwise every
// country the cluster was ever linked to.
CountrySet GenderOrigin(const AuthorCluster &cluster, const RecordIndex &index);

// Lowercase folded first token of a forename, or empty for initials.
std::string GenderLookupName(std::string_view first_name);

struct GenderGuess {
  Gender gender = Gender::kUnknown;
  double confidence = 0;
};

class GenderProvider {
 public:
  virtual ~GenderProvider() = default;
  virtual std::string name() const = 0;
  // nullopt when the provider has no opinion. Throws ProviderUnavailable
  // when the provider cannot answer at all.
  virtual std::optional<GenderGuess> Lookup(const std::string &first_name,
                                            const CountryCode &country) = 0;
};

class ProviderUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tab-delimited table: first_name, country-or-*, gender, confidence.
// Country-specific rows win over '*' rows.
class LocalGenderTable : public GenderProvider {
 public:
  static std::unique_ptr<LocalGenderTable> Load(const std::string &path);
  static std::unique_ptr<LocalGenderTable> Parse(std::istream &in);

  void Add(std::string_view first_name, const std::string &country, GenderGuess guess);

  std::string name() const override { return "local"; }
  std::optional<GenderGuess> Lookup(const std::string &first_name,
                                    const CountryCode &country) override;

 private:
  std::map<std::pair<std::string, std::string>, GenderGuess> rows_;
};

struct RemoteProviderConfig {
  std::string name = "remote";
  // scheme://host[:port][/path]; queried as
  // GET <path>?name=<first>&country=<alpha3>[&apikey=<key>], answering
  // {"gender": "male"|"female"|null, "probability": p}.
  std::string base_url;
  // Environment variable holding the API key; unset means no key.
  std::string api_key_env;
  std::chrono::milliseconds timeout{5000};
  std::chrono::milliseconds min_interval{0};
};

// HTTP name-to-gender service client. Answers are cached by
// (name, country); the cache and the rate limiter are safe to share
// between threads.
class RemoteGenderProvider : public GenderProvider {
 public:
  explicit RemoteGenderProvider(RemoteProviderConfig config);
  ~RemoteGenderProvider() override;

  std::string name() const override { return config_.name; }
  std::optional<GenderGuess> Lookup(const std::string &first_name,
                                    const CountryCode &country) override;

  size_t remote_calls() const;

 private:
  std::optional<GenderGuess> Fetch(const std::string &first_name,
                                   const CountryCode &country);

  RemoteProviderConfig config_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::optional<GenderGuess>> cache_;
  std::chrono::steady_clock::time_point last_call_{};
  size_t remote_calls_ = 0;
};

struct GenderInference {
  Gender gender = Gender::kUnknown;
  std::vector<std::string> diagnostics;
};

// For each origin country, asks providers in priority order and keeps the
// first answer with confidence >= min_confidence. Disagreeing answers
// across countries, or no qualifying answer, yield Unknown. Unavailable
// providers are skipped with a diagnostic.
GenderInference InferGender(std::string_view first_name, const CountrySet &origin,
                            std::span<GenderProvider *const> providers,
                            double min_confidence = 0.90);

struct ResearcherDemographics {
  std::string cluster_id;
  std::string first_name;
  int first_pub_year = 0;
  CountrySet academic_origin;
  CountrySet gender_origin;
  int reference_year = 0;
  int academic_age = 0;
  AgeBucket age_bucket = AgeBucket::k0To5;
  Gender gender = Gender::kUnknown;
};

struct DemographyOptions {
  StudyWindow window;
  AgeReference age_reference = AgeReference::kEvent;
  double min_confidence = 0.90;
};

// Forename used for gender lookup: the longest full forename among the
// cluster's mentions (ties to the alphabetically smallest), else the first
// mention's forename.
std::string RepresentativeForename(const AuthorCluster &cluster, const RecordIndex &index);

ResearcherDemographics AttributeDemographics(const AuthorCluster &cluster,
                                             const RecordIndex &index,
                                             const MobilityClassification &mobility,
                                             std::span<GenderProvider *const> providers,
                                             const DemographyOptions &options,
                                             std::vector<std::string> *diagnostics = nullptr);

// Tab-separated demographics file, one researcher per line.
void WriteDemographics(std::ostream &out, std::span<const ResearcherDemographics> rows);
std::vector<ResearcherDemographics> ReadDemographics(std::istream &in);

}  // namespace scimob

#endif  // SCIMOB_DEMOGRAPHY_H_
