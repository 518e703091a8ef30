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

#include "scimob/indicators.h"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "scimob/error.h"

namespace scimob {

std::vector<Researcher> BuildPopulation(std::span<const AuthorCluster> clusters,
                                        const RecordIndex &index,
                                        std::span<const MobilityClassification> mobility,
                                        std::span<const ResearcherDemographics> demographics) {
  std::unordered_map<std::string, const MobilityClassification *> by_mobility;
  for (const auto &m : mobility) by_mobility.emplace(m.cluster_id, &m);
  std::unordered_map<std::string, const ResearcherDemographics *> by_demo;
  for (const auto &d : demographics) by_demo.emplace(d.cluster_id, &d);

  std::vector<Researcher> out;
  out.reserve(clusters.size());
  for (const auto &cluster : clusters) {
    auto m = by_mobility.find(cluster.cluster_id);
    auto d = by_demo.find(cluster.cluster_id);
    if (m == by_mobility.end() || d == by_demo.end()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "cluster " + cluster.cluster_id + " lacks classification or demographics");
    }
    Researcher r{*m->second, *d->second, {}};
    for (const auto &pub : PublicationsOf(cluster, index)) {
      r.linked_countries.insert(pub.countries.begin(), pub.countries.end());
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shares

std::string FormatFixed(double value, int decimals) {
  return fmt::format("{:.{}f}", value, decimals);
}

std::string FormatPercent(double share, int decimals) {
  return FormatFixed(share * 100.0, decimals) + "%";
}

ShareTable MobilitySharesFromCounts(size_t not_mobile, size_t migrants, size_t directional,
                                    size_t non_directional, size_t insufficient) {
  ShareTable table;
  const size_t mobile = migrants + directional + non_directional;
  table.total = not_mobile + mobile + insufficient;
  if (table.total == 0) return table;
  const double total = static_cast<double>(table.total);
  auto row = [&](std::string label, size_t count, int depth, bool mobile_row) {
    ShareRow r;
    r.label = std::move(label);
    r.count = count;
    r.total_share = static_cast<double>(count) / total;
    r.depth = depth;
    if (mobile_row && mobile > 0) {
      r.mobility_share = static_cast<double>(count) / static_cast<double>(mobile);
    }
    table.rows.push_back(std::move(r));
  };
  row("Not Mobile", not_mobile, 0, false);
  row("Mobile", mobile, 0, true);
  row("Migrants", migrants, 1, true);
  row("Traveller (directional)", directional, 1, true);
  row("Traveller (non-directional)", non_directional, 1, true);
  row("Insufficient information", insufficient, 0, false);
  row("All", table.total, 0, false);
  return table;
}

ShareTable MobilityShares(std::span<const MobilityClassification> classifications) {
  std::map<Typology, size_t> counts;
  for (const auto &c : classifications) ++counts[c.typology];
  return MobilitySharesFromCounts(
      counts[Typology::kNotMobile], counts[Typology::kMigrant],
      counts[Typology::kTravellerDirectional], counts[Typology::kTravellerNonDirectional],
      counts[Typology::kInsufficientInformation]);
}

// ---------------------------------------------------------------------------
// Country profiles

std::optional<double> CountryProfile::Share(Role role) const {
  const size_t total = directional_total();
  if (total == 0) return std::nullopt;
  size_t n = 0;
  switch (role) {
    case Role::kEmigrant: n = emigrant; break;
    case Role::kImmigrant: n = immigrant; break;
    case Role::kOutgoingTraveller: n = outgoing; break;
    case Role::kIncomingTraveller: n = incoming; break;
    case Role::kHome: return std::nullopt;
  }
  return static_cast<double>(n) / static_cast<double>(total);
}

std::vector<CountryProfile> CountryProfiles(std::span<const Researcher> population,
                                            std::span<const PublicationRecord> records) {
  std::map<CountryCode, CountryProfile> profiles;
  auto profile = [&](const CountryCode &c) -> CountryProfile & {
    auto &p = profiles[c];
    p.country = c;
    return p;
  };
  for (const auto &record : records) {
    for (const auto &c : record.Countries()) ++profile(c).publications;
  }
  for (const auto &r : population) {
    for (const auto &c : r.linked_countries) ++profile(c).researchers;
    if (!r.mobility.IsDirectionalMobile()) continue;
    for (const auto &[c, role] : r.mobility.roles) {
      auto &p = profile(c);
      switch (role) {
        case Role::kEmigrant: ++p.emigrant; break;
        case Role::kImmigrant: ++p.immigrant; break;
        case Role::kOutgoingTraveller: ++p.outgoing; break;
        case Role::kIncomingTraveller: ++p.incoming; break;
        case Role::kHome: break;
      }
    }
  }
  std::vector<CountryProfile> out;
  for (auto &[_, p] : profiles) {
    if (p.researchers > 0) {
      p.pubs_per_researcher =
          static_cast<double>(p.publications) / static_cast<double>(p.researchers);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pyramid

PopulationPyramid BuildPopulationPyramid(std::span<const Researcher> population,
                                         const std::set<CountryCode> &scope) {
  PopulationPyramid pyramid;
  for (AgeBucket b : kAllAgeBuckets) {
    pyramid.emigrants[b] = 0;
    pyramid.immigrants[b] = 0;
  }
  double sum_e = 0, sum_i = 0, sum_all = 0;
  size_t n_e = 0, n_i = 0;
  auto touches = [&](const MobilityClassification &m, Role role) {
    for (const auto &c : m.CountriesWithRole(role)) {
      if (scope.count(c)) return true;
    }
    return false;
  };
  for (const auto &r : population) {
    if (r.mobility.typology != Typology::kMigrant) continue;
    const bool emigrant = touches(r.mobility, Role::kEmigrant);
    const bool immigrant = touches(r.mobility, Role::kImmigrant);
    if (!emigrant && !immigrant) continue;
    const double age = r.demographics.academic_age;
    ++pyramid.migrants;
    sum_all += age;
    if (emigrant) {
      ++pyramid.emigrants[r.demographics.age_bucket];
      sum_e += age;
      ++n_e;
    }
    if (immigrant) {
      ++pyramid.immigrants[r.demographics.age_bucket];
      sum_i += age;
      ++n_i;
    }
  }
  if (n_e) pyramid.mean_emigrant_age = sum_e / static_cast<double>(n_e);
  if (n_i) pyramid.mean_immigrant_age = sum_i / static_cast<double>(n_i);
  if (pyramid.migrants) pyramid.mean_age = sum_all / static_cast<double>(pyramid.migrants);
  return pyramid;
}

// ---------------------------------------------------------------------------
// Gender

std::optional<double> GenderRatio(size_t male, size_t female) {
  if (female == 0) return std::nullopt;
  return static_cast<double>(male) / static_cast<double>(female);
}

GenderRatioReport GenderRatios(std::span<const Researcher> population) {
  std::map<CountryCode, GenderRatioRow> rows;
  auto bump = [](Gender g, size_t *male, size_t *female) {
    if (g == Gender::kMale) ++*male;
    if (g == Gender::kFemale) ++*female;
  };
  for (const auto &r : population) {
    const Gender g = r.demographics.gender;
    for (const auto &c : r.linked_countries) {
      auto &row = rows[c];
      row.country = c;
      bump(g, &row.male_all, &row.female_all);
    }
    if (r.mobility.typology != Typology::kMigrant) continue;
    for (const auto &[c, role] : r.mobility.roles) {
      if (role != Role::kEmigrant && role != Role::kImmigrant) continue;
      auto &row = rows[c];
      row.country = c;
      bump(g, &row.male_migrants, &row.female_migrants);
    }
  }
  GenderRatioReport report;
  double sum = 0;
  size_t defined = 0;
  for (auto &[_, row] : rows) {
    row.ratio_all = GenderRatio(row.male_all, row.female_all);
    row.ratio_migrants = GenderRatio(row.male_migrants, row.female_migrants);
    if (row.ratio_all && row.ratio_migrants && *row.ratio_all > 0) {
      row.ratio_of_ratios = *row.ratio_migrants / *row.ratio_all;
      sum += *row.ratio_of_ratios;
      ++defined;
    } else {
      ++report.undefined_rows;
    }
    report.rows.push_back(row);
  }
  if (defined) report.mean_ratio_of_ratios = sum / static_cast<double>(defined);
  return report;
}

double GenderShareRow::male_share() const {
  return total() ? static_cast<double>(male) / static_cast<double>(total()) : 0.0;
}
double GenderShareRow::female_share() const {
  return total() ? static_cast<double>(female) / static_cast<double>(total()) : 0.0;
}
double GenderShareRow::unknown_share() const {
  return total() ? static_cast<double>(unknown) / static_cast<double>(total()) : 0.0;
}

std::vector<GenderShareRow> GenderShareTable(std::span<const Researcher> population,
                                             const CountryRegistry &registry) {
  std::map<CountryCode, GenderShareRow> rows;
  GenderShareRow mena;
  mena.country = kMenaRegion;
  auto add = [](GenderShareRow &row, Gender g) {
    switch (g) {
      case Gender::kMale: ++row.male; break;
      case Gender::kFemale: ++row.female; break;
      case Gender::kUnknown: ++row.unknown; break;
    }
  };
  for (const auto &r : population) {
    bool in_mena = false;
    for (const auto &c : r.linked_countries) {
      auto &row = rows[c];
      row.country = c;
      add(row, r.demographics.gender);
      in_mena = in_mena || registry.IsMena(c);
    }
    if (in_mena) add(mena, r.demographics.gender);
  }
  std::vector<GenderShareRow> out;
  for (auto &[_, row] : rows) out.push_back(row);
  out.push_back(mena);
  return out;
}

// ---------------------------------------------------------------------------
// Network shares and partners

std::optional<double> MenaWeightShare(const CountryGraph &g, const CountryCode &country,
                                      const CountryRegistry &registry) {
  long total = 0, mena = 0;
  for (const auto &[pair, w] : g.edges()) {
    const CountryCode *other = nullptr;
    if (pair.first == country) other = &pair.second;
    if (pair.second == country) other = &pair.first;
    if (!other) continue;
    total += w;
    if (registry.IsMena(*other)) mena += w;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(mena) / static_cast<double>(total);
}

std::vector<MenaRelationRow> MenaRelationShares(const CountryGraph &collaboration,
                                                const CountryGraph &mobility,
                                                const CountryRegistry &registry) {
  std::vector<MenaRelationRow> out;
  for (const auto &country : registry.mena_set()) {
    if (!collaboration.nodes().count(country) && !mobility.nodes().count(country)) continue;
    out.push_back({country, MenaWeightShare(collaboration, country, registry),
                   MenaWeightShare(mobility, country, registry)});
  }
  return out;
}

namespace {

std::vector<PartnerCount> RankPartners(std::map<CountryCode, size_t> counts, size_t k) {
  std::vector<PartnerCount> ranked;
  for (const auto &[partner, n] : counts) {
    if (n > 0) ranked.push_back({partner, n});
  }
  std::sort(ranked.begin(), ranked.end(), [](const PartnerCount &a, const PartnerCount &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.partner < b.partner;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

}  // namespace

TopPartners TopPartnersOf(const CountryGraph &flows, const CountryCode &country, size_t k) {
  std::map<CountryCode, size_t> origins, destinations;
  for (const auto &[pair, w] : flows.flows()) {
    if (pair.second == country) origins[pair.first] += static_cast<size_t>(w);
    if (pair.first == country) destinations[pair.second] += static_cast<size_t>(w);
  }
  return {RankPartners(std::move(origins), k), RankPartners(std::move(destinations), k)};
}

// ---------------------------------------------------------------------------
// Alluvial

std::string_view FlowDirectionName(FlowDirection d) {
  return d == FlowDirection::kImmigratingFrom ? "ImmigratingFrom" : "EmigratingTo";
}

size_t MobileResearcherCount(std::span<const Researcher> population, const CountryCode &country) {
  size_t n = 0;
  for (const auto &r : population) {
    if (!r.mobility.IsDirectionalMobile()) continue;
    auto it = r.mobility.roles.find(country);
    if (it != r.mobility.roles.end() && it->second != Role::kHome) ++n;
  }
  return n;
}

std::vector<AlluvialRow> AlluvialExport(std::span<const Researcher> population,
                                        const CountryCode &country, size_t k,
                                        size_t min_mobile_researchers) {
  if (MobileResearcherCount(population, country) <= min_mobile_researchers) return {};

  std::vector<MobilityClassification> migrants;
  for (const auto &r : population) {
    if (r.mobility.typology == Typology::kMigrant) migrants.push_back(r.mobility);
  }
  const auto moves = MigrantMoves(migrants);
  const CountryGraph flows = BuildMobilityNetwork(moves);
  const TopPartners top = TopPartnersOf(flows, country, k);
  auto in_top = [](const std::vector<PartnerCount> &list, const CountryCode &c) {
    return std::any_of(list.begin(), list.end(),
                       [&](const PartnerCount &p) { return p.partner == c; });
  };

  using Key = std::tuple<FlowDirection, Gender, AgeBucket, CountryCode>;
  std::map<Key, size_t> cells;
  for (const auto &r : population) {
    const auto &m = r.mobility;
    if (m.typology != Typology::kMigrant) continue;
    auto role = m.roles.find(country);
    if (role == m.roles.end()) continue;
    FlowDirection direction;
    std::vector<CountryCode> partners;
    if (role->second == Role::kEmigrant) {
      direction = FlowDirection::kEmigratingTo;
      partners = m.CountriesWithRole(Role::kImmigrant);
    } else if (role->second == Role::kImmigrant) {
      direction = FlowDirection::kImmigratingFrom;
      partners = m.CountriesWithRole(Role::kEmigrant);
    } else {
      continue;
    }
    const auto &ranked =
        direction == FlowDirection::kEmigratingTo ? top.destinations : top.origins;
    for (const auto &partner : partners) {
      const CountryCode label = in_top(ranked, partner) ? partner : CountryCode(kOtherPartner);
      ++cells[{direction, r.demographics.gender, r.demographics.age_bucket, label}];
    }
  }
  std::vector<AlluvialRow> rows;
  for (const auto &[key, n] : cells) {
    const auto &[direction, gender, bucket, partner] = key;
    rows.push_back({country, direction, gender, bucket, partner, n});
  }
  return rows;
}

}  // namespace scimob
