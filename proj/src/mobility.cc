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

#include "scimob/mobility.h"

#include <algorithm>
#include <array>

#include <nlohmann/json.hpp>

#include "scimob/error.h"

namespace scimob {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Typology, std::string_view>, 5> kTypologyNames = {{
    {Typology::kNotMobile, "NotMobile"},
    {Typology::kMigrant, "Migrant"},
    {Typology::kTravellerDirectional, "TravellerDirectional"},
    {Typology::kTravellerNonDirectional, "TravellerNonDirectional"},
    {Typology::kInsufficientInformation, "InsufficientInformation"},
}};

constexpr std::array<std::pair<Role, std::string_view>, 5> kRoleNames = {{
    {Role::kEmigrant, "Emigrant"},
    {Role::kImmigrant, "Immigrant"},
    {Role::kOutgoingTraveller, "OutgoingTraveller"},
    {Role::kIncomingTraveller, "IncomingTraveller"},
    {Role::kHome, "Home"},
}};

const CountrySet kEmptySet;

}  // namespace

std::string_view TypologyName(Typology t) {
  for (const auto &[value, name] : kTypologyNames) {
    if (value == t) return name;
  }
  return "?";
}

Typology ParseTypology(std::string_view name) {
  for (const auto &[value, n] : kTypologyNames) {
    if (n == name) return value;
  }
  throw Error(ErrorKind::kParse, "unknown typology " + std::string(name));
}

std::string_view RoleName(Role r) {
  for (const auto &[value, name] : kRoleNames) {
    if (value == r) return name;
  }
  return "?";
}

Role ParseRole(std::string_view name) {
  for (const auto &[value, n] : kRoleNames) {
    if (n == name) return value;
  }
  throw Error(ErrorKind::kParse, "unknown role " + std::string(name));
}

std::vector<ClusterPublication> PublicationsOf(const AuthorCluster &cluster,
                                               const RecordIndex &index) {
  std::map<std::string, ClusterPublication> by_pub;
  for (const auto &member : cluster.members) {
    auto it = index.find(member.pub_id);
    if (it == index.end()) continue;
    const PublicationRecord *record = it->second;
    if (member.index >= record->mentions.size()) continue;
    auto &pub = by_pub[member.pub_id];
    pub.record = record;
    const auto &countries = record->mentions[member.index].countries;
    pub.countries.insert(countries.begin(), countries.end());
    pub.mention_indices.push_back(member.index);
  }
  std::vector<ClusterPublication> out;
  out.reserve(by_pub.size());
  for (auto &[_, pub] : by_pub) out.push_back(std::move(pub));
  std::stable_sort(out.begin(), out.end(),
                   [](const ClusterPublication &a, const ClusterPublication &b) {
                     return a.record->year < b.record->year;
                   });
  return out;
}

const CountrySet &AffiliationTimeline::origin() const {
  return entries.empty() ? kEmptySet : entries.front().countries;
}

AffiliationTimeline BuildTimeline(const AuthorCluster &cluster,
                                  const RecordIndex &index,
                                  const StudyWindow &window) {
  AffiliationTimeline timeline;
  timeline.cluster_id = cluster.cluster_id;
  for (auto &pub : PublicationsOf(cluster, index)) {
    if (!window.Contains(pub.record->year)) continue;
    timeline.entries.push_back({pub.record->year, pub.record->pub_id, std::move(pub.countries)});
  }
  return timeline;
}

std::vector<CountryCode> MobilityClassification::CountriesWithRole(Role role) const {
  std::vector<CountryCode> out;
  for (const auto &[country, r] : roles) {
    if (r == role) out.push_back(country);
  }
  return out;
}

MobilityClassification Classify(const AffiliationTimeline &timeline) {
  MobilityClassification result;
  result.cluster_id = timeline.cluster_id;
  const auto &entries = timeline.entries;
  if (entries.size() < 2) {
    result.typology = Typology::kInsufficientInformation;
    return result;
  }

  CountrySet all;
  for (const auto &e : entries) all.insert(e.countries.begin(), e.countries.end());
  if (all.size() == 1) {
    result.typology = Typology::kNotMobile;
    result.roles.emplace(*all.begin(), Role::kHome);
    return result;
  }

  CountrySet seen = entries.front().countries;
  for (size_t i = 1; i < entries.size(); ++i) {
    for (const auto &country : entries[i].countries) {
      if (seen.count(country)) continue;
      for (const auto &prior : entries[i - 1].countries) {
        result.events.push_back({prior, country, entries[i].year});
      }
    }
    seen.insert(entries[i].countries.begin(), entries[i].countries.end());
  }

  const bool constant = std::all_of(entries.begin(), entries.end(), [&](const TimelineEntry &e) {
    return e.countries == entries.front().countries;
  });
  if (constant) {
    result.typology = Typology::kTravellerNonDirectional;
    return result;
  }

  const CountrySet &origin = timeline.origin();
  const CountrySet &last = entries.back().countries;
  const bool origin_retained = std::any_of(
      origin.begin(), origin.end(), [&](const CountryCode &c) { return last.count(c) > 0; });

  if (origin_retained) {
    result.typology = Typology::kTravellerDirectional;
    for (const auto &country : all) {
      if (!origin.count(country)) result.roles[country] = Role::kIncomingTraveller;
    }
    for (const auto &country : origin) {
      bool outgoing = false;
      for (const auto &e : entries) {
        if (!e.countries.count(country)) continue;
        for (const auto &other : e.countries) {
          if (!origin.count(other)) outgoing = true;
        }
      }
      result.roles[country] = outgoing ? Role::kOutgoingTraveller : Role::kHome;
    }
  } else {
    result.typology = Typology::kMigrant;
    for (const auto &country : origin) result.roles[country] = Role::kEmigrant;
    for (const auto &country : last) result.roles[country] = Role::kImmigrant;
  }
  return result;
}

std::vector<CountryMobilityRow> CountryMobilityTable(
    std::span<const MobilityClassification> classifications, size_t min_count) {
  std::map<CountryCode, CountryMobilityRow> rows;
  for (const auto &c : classifications) {
    if (!c.IsDirectionalMobile()) continue;
    for (const auto &[country, role] : c.roles) {
      auto &row = rows[country];
      row.country = country;
      switch (role) {
        case Role::kEmigrant: ++row.emigrant; break;
        case Role::kImmigrant: ++row.immigrant; break;
        case Role::kOutgoingTraveller: ++row.outgoing; break;
        case Role::kIncomingTraveller: ++row.incoming; break;
        case Role::kHome: break;
      }
    }
  }
  std::vector<CountryMobilityRow> out;
  for (auto &[_, row] : rows) {
    if (row.total() == 0) continue;
    row.excluded = row.total() < min_count;
    out.push_back(row);
  }
  return out;
}

std::string SerializeClassification(const MobilityClassification &c) {
  ordered_json doc;
  doc["cluster_id"] = c.cluster_id;
  doc["typology"] = TypologyName(c.typology);
  ordered_json roles = ordered_json::object();
  for (const auto &[country, role] : c.roles) roles[country] = RoleName(role);
  doc["roles"] = std::move(roles);
  ordered_json events = ordered_json::array();
  for (const auto &e : c.events) {
    events.push_back(ordered_json{{"from", e.from}, {"to", e.to}, {"year", e.year}});
  }
  doc["events"] = std::move(events);
  return doc.dump();
}

MobilityClassification ParseClassification(const std::string &line) {
  json doc = json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::kParse, "classification line is not a JSON object");
  }
  try {
    MobilityClassification c;
    c.cluster_id = doc.at("cluster_id").get<std::string>();
    c.typology = ParseTypology(doc.at("typology").get<std::string>());
    for (const auto &[country, role] : doc.at("roles").items()) {
      c.roles[country] = ParseRole(role.get<std::string>());
    }
    for (const auto &e : doc.at("events")) {
      c.events.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                          e.at("year").get<int>()});
    }
    return c;
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("classification line: ") + e.what());
  }
}

}  // namespace scimob
