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

#ifndef SCIMOB_INDICATORS_H_
#define SCIMOB_INDICATORS_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scimob/corpus.h"
#include "scimob/demography.h"
#include "scimob/disambig.h"
#include "scimob/mobility.h"
#include "scimob/netmetrics.h"

namespace scimob {

// One researcher with everything the reports aggregate over.
struct Researcher {
  MobilityClassification mobility;
  ResearcherDemographics demographics;
  CountrySet linked_countries;  // countries on any of their publications
};

// Joins classifications and demographics by cluster id. Throws Error when
// a cluster lacks either.
std::vector<Researcher> BuildPopulation(std::span<const AuthorCluster> clusters,
                                        const RecordIndex &index,
                                        std::span<const MobilityClassification> mobility,
                                        std::span<const ResearcherDemographics> demographics);

// ---------------------------------------------------------------------------
// Mobility shares

struct ShareRow {
  std::string label;
  size_t count = 0;
  double total_share = 0;
  std::optional<double> mobility_share;  // only for the mobile rows
  int depth = 0;                         // 1 for sub-rows of "Mobile"
};

struct ShareTable {
  std::vector<ShareRow> rows;
  size_t total = 0;
};

// Rows: Not Mobile, Mobile, Migrants, Traveller (directional),
// Traveller (non-directional), Insufficient information, All. Empty when
// there are no researchers.
ShareTable MobilityShares(std::span<const MobilityClassification> classifications);
ShareTable MobilitySharesFromCounts(size_t not_mobile, size_t migrants, size_t directional,
                                    size_t non_directional, size_t insufficient);

// "84.7%" style at the requested number of decimals.
std::string FormatPercent(double share, int decimals);
std::string FormatFixed(double value, int decimals);

// ---------------------------------------------------------------------------
// Country profiles

struct CountryProfile {
  CountryCode country;
  size_t researchers = 0;
  size_t publications = 0;  // full counting
  std::optional<double> pubs_per_researcher;
  size_t emigrant = 0;
  size_t immigrant = 0;
  size_t outgoing = 0;
  size_t incoming = 0;

  size_t directional_total() const { return emigrant + immigrant + outgoing + incoming; }
  // Shares over the country's directional-mobile population; nullopt when
  // the country has none.
  std::optional<double> Share(Role role) const;
};

std::vector<CountryProfile> CountryProfiles(std::span<const Researcher> population,
                                            std::span<const PublicationRecord> records);

// ---------------------------------------------------------------------------
// Population pyramid of migrants

struct PopulationPyramid {
  std::map<AgeBucket, size_t> emigrants;
  std::map<AgeBucket, size_t> immigrants;
  size_t migrants = 0;  // distinct migrants touching the scope
  std::optional<double> mean_emigrant_age;
  std::optional<double> mean_immigrant_age;
  std::optional<double> mean_age;
};

// A migrant counts on the emigrant side when one of their Emigrant
// countries is in `scope`, and on the immigrant side likewise.
PopulationPyramid BuildPopulationPyramid(std::span<const Researcher> population,
                                         const std::set<CountryCode> &scope);

// ---------------------------------------------------------------------------
// Gender

struct GenderRatioRow {
  CountryCode country;
  size_t male_all = 0;
  size_t female_all = 0;
  size_t male_migrants = 0;
  size_t female_migrants = 0;
  std::optional<double> ratio_all;
  std::optional<double> ratio_migrants;
  std::optional<double> ratio_of_ratios;
};

struct GenderRatioReport {
  std::vector<GenderRatioRow> rows;
  // Mean of the defined ratio_of_ratios values.
  std::optional<double> mean_ratio_of_ratios;
  size_t undefined_rows = 0;
};

// Male/female ratio; nullopt when there are no women.
std::optional<double> GenderRatio(size_t male, size_t female);

// "All" counts researchers linked to the country; "migrants" those with an
// Emigrant or Immigrant role there.
GenderRatioReport GenderRatios(std::span<const Researcher> population);

struct GenderShareRow {
  std::string country;  // "MENA" for the regional aggregate
  size_t male = 0;
  size_t female = 0;
  size_t unknown = 0;

  size_t total() const { return male + female + unknown; }
  double male_share() const;
  double female_share() const;
  double unknown_share() const;
};

// Per linked country, followed by a "MENA" row over researchers linked to
// any MENA member.
std::vector<GenderShareRow> GenderShareTable(std::span<const Researcher> population,
                                             const CountryRegistry &registry);

// ---------------------------------------------------------------------------
// Networks

struct MenaRelationRow {
  CountryCode country;
  std::optional<double> collaboration;  // MENA share of co-publication weight
  std::optional<double> mobility;       // MENA share of researcher flow weight
};

std::optional<double> MenaWeightShare(const CountryGraph &g, const CountryCode &country,
                                      const CountryRegistry &registry);
std::vector<MenaRelationRow> MenaRelationShares(const CountryGraph &collaboration,
                                                const CountryGraph &mobility,
                                                const CountryRegistry &registry);

struct PartnerCount {
  CountryCode partner;
  size_t count = 0;

  bool operator==(const PartnerCount &) const = default;
};

struct TopPartners {
  std::vector<PartnerCount> origins;       // partner -> country
  std::vector<PartnerCount> destinations;  // country -> partner
};

// Largest flows first; ties go to the smaller country code.
TopPartners TopPartnersOf(const CountryGraph &flows, const CountryCode &country, size_t k = 15);

// ---------------------------------------------------------------------------
// Alluvial export

enum class FlowDirection { kImmigratingFrom, kEmigratingTo };
std::string_view FlowDirectionName(FlowDirection d);

inline constexpr const char *kOtherPartner = "OTHER";

struct AlluvialRow {
  CountryCode country;
  FlowDirection direction = FlowDirection::kEmigratingTo;
  Gender gender = Gender::kUnknown;
  AgeBucket age_bucket = AgeBucket::k0To5;
  CountryCode partner;  // kOtherPartner aggregates partners outside the top k
  size_t count = 0;

  bool operator==(const AlluvialRow &) const = default;
};

// Directional-mobile researchers with any role in the country.
size_t MobileResearcherCount(std::span<const Researcher> population, const CountryCode &country);

// Gender x age bucket x partner flows of the country's migrants, one unit
// per (migrant, partner) pair. Partners outside the top k (by migrant
// flow) fold into an OTHER row. Countries with at most
// `min_mobile_researchers` mobile researchers yield no rows.
std::vector<AlluvialRow> AlluvialExport(std::span<const Researcher> population,
                                        const CountryCode &country, size_t k = 15,
                                        size_t min_mobile_researchers = 1000);

}  // namespace scimob

#endif  // SCIMOB_INDICATORS_H_
