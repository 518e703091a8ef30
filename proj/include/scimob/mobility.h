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

#ifndef SCIMOB_MOBILITY_H_
#define SCIMOB_MOBILITY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scimob/corpus.h"
#include "scimob/disambig.h"

namespace scimob {

// One publication of a researcher: the record plus the countries on the
// researcher's own mention(s) of it.
struct ClusterPublication {
  const PublicationRecord *record = nullptr;
  CountrySet countries;
  std::vector<size_t> mention_indices;
};

// The cluster's publications present in `index`, ordered by (year, pub_id).
// Several mentions of one cluster on a single record merge into one entry.
std::vector<ClusterPublication> PublicationsOf(const AuthorCluster &cluster,
                                               const RecordIndex &index);

struct TimelineEntry {
  int year = 0;
  std::string pub_id;
  CountrySet countries;

  bool operator==(const TimelineEntry &) const = default;
};

struct AffiliationTimeline {
  std::string cluster_id;
  std::vector<TimelineEntry> entries;

  // Country set of the first entry; empty for an empty timeline.
  const CountrySet &origin() const;
};

// One entry per in-window publication of the cluster, ordered by
// (year, pub_id).
AffiliationTimeline BuildTimeline(const AuthorCluster &cluster,
                                  const RecordIndex &index,
                                  const StudyWindow &window);

enum class Typology {
  kNotMobile,
  kMigrant,
  kTravellerDirectional,
  kTravellerNonDirectional,
  kInsufficientInformation,
};

enum class Role {
  kEmigrant,
  kImmigrant,
  kOutgoingTraveller,
  kIncomingTraveller,
  kHome,
};

std::string_view TypologyName(Typology t);
Typology ParseTypology(std::string_view name);
std::string_view RoleName(Role r);
Role ParseRole(std::string_view name);

struct MobilityEvent {
  CountryCode from;
  CountryCode to;
  int year = 0;

  bool operator==(const MobilityEvent &) const = default;
};

struct MobilityClassification {
  std::string cluster_id;
  Typology typology = Typology::kInsufficientInformation;
  std::map<CountryCode, Role> roles;
  std::vector<MobilityEvent> events;

  // Migrants and directional travellers: the researchers whose movements
  // feed the flow indicators.
  bool IsDirectionalMobile() const {
    return typology == Typology::kMigrant ||
           typology == Typology::kTravellerDirectional;
  }
  std::vector<CountryCode> CountriesWithRole(Role role) const;
};

// Applies the mobility taxonomy to a timeline:
//   fewer than two entries            -> InsufficientInformation
//   a single country overall          -> NotMobile (Home)
//   the same multi-country set always -> TravellerNonDirectional
//   an origin country in the last entry -> TravellerDirectional
//   otherwise                         -> Migrant
// Directional travellers mark origin countries that co-occur with a
// foreign country as OutgoingTraveller, every foreign country as
// IncomingTraveller, and remaining origin countries as Home. Migrants mark
// origin countries Emigrant and last-entry countries Immigrant.
//
// An event is emitted for every country at its first appearance, once per
// country of the preceding entry.
MobilityClassification Classify(const AffiliationTimeline &timeline);

struct CountryMobilityRow {
  CountryCode country;
  size_t emigrant = 0;
  size_t immigrant = 0;
  size_t outgoing = 0;
  size_t incoming = 0;
  bool excluded = false;

  size_t total() const { return emigrant + immigrant + outgoing + incoming; }
};

// Per-country directional role counts over migrants and directional
// travellers, ordered by country code. Rows whose total falls below
// `min_count` are kept but flagged excluded.
std::vector<CountryMobilityRow> CountryMobilityTable(
    std::span<const MobilityClassification> classifications, size_t min_count);

// JSON-lines classification file: one object per researcher with
// cluster_id, typology, roles ({country: role}) and events.
std::string SerializeClassification(const MobilityClassification &c);
MobilityClassification ParseClassification(const std::string &line);

}  // namespace scimob

#endif  // SCIMOB_MOBILITY_H_
