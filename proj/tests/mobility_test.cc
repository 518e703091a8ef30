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
#include <random>

#include <gtest/gtest.h>

#include "scimob/error.h"
#include "support/oracles.h"

namespace scimob {
namespace {

AffiliationTimeline Timeline(std::vector<std::pair<int, CountrySet>> entries) {
  AffiliationTimeline t;
  t.cluster_id = "x#0";
  int i = 0;
  for (auto &[year, countries] : entries) {
    t.entries.push_back({year, "p" + std::to_string(i++), std::move(countries)});
  }
  return t;
}

TEST(ClassifyTest, Migrant) {
  const auto c = Classify(Timeline({{2009, {"A"}}, {2011, {"A"}}, {2013, {"B"}}}));
  EXPECT_EQ(c.typology, Typology::kMigrant);
  EXPECT_EQ(c.roles, (std::map<CountryCode, Role>{{"A", Role::kEmigrant}, {"B", Role::kImmigrant}}));
  EXPECT_EQ(c.events, (std::vector<MobilityEvent>{{"A", "B", 2013}}));
}

TEST(ClassifyTest, DirectionalTraveller) {
  const auto c = Classify(Timeline({{2009, {"A"}}, {2012, {"A", "B"}}, {2015, {"A", "B"}}}));
  EXPECT_EQ(c.typology, Typology::kTravellerDirectional);
  EXPECT_EQ(c.roles, (std::map<CountryCode, Role>{{"A", Role::kOutgoingTraveller},
                                                  {"B", Role::kIncomingTraveller}}));
  EXPECT_EQ(c.events, (std::vector<MobilityEvent>{{"A", "B", 2012}}));
}

TEST(ClassifyTest, NonDirectionalTraveller) {
  const auto c = Classify(Timeline({{2010, {"A", "B"}}, {2014, {"A", "B"}}}));
  EXPECT_EQ(c.typology, Typology::kTravellerNonDirectional);
  EXPECT_TRUE(c.roles.empty());
  EXPECT_FALSE(c.IsDirectionalMobile());
}

TEST(ClassifyTest, NotMobileAndInsufficient) {
  const auto c = Classify(Timeline({{2010, {"A"}}, {2013, {"A"}}}));
  EXPECT_EQ(c.typology, Typology::kNotMobile);
  EXPECT_EQ(c.roles, (std::map<CountryCode, Role>{{"A", Role::kHome}}));
  EXPECT_TRUE(c.events.empty());
  EXPECT_EQ(Classify(Timeline({{2010, {"A", "B"}}})).typology, Typology::kInsufficientInformation);
  EXPECT_EQ(Classify(Timeline({})).typology, Typology::kInsufficientInformation);
}

TEST(ClassifyTest, ReturnIsDirectionalTravel) {
  const auto c = Classify(Timeline({{2008, {"A"}}, {2010, {"B"}}, {2014, {"A"}}}));
  EXPECT_EQ(c.typology, Typology::kTravellerDirectional);
  EXPECT_EQ(c.roles.at("A"), Role::kHome);
  EXPECT_EQ(c.roles.at("B"), Role::kIncomingTraveller);
}

TEST(ClassifyTest, EventsFromEveryPriorCountry) {
  const auto c = Classify(Timeline({{2008, {"A", "B"}}, {2010, {"C"}}, {2012, {"D"}}}));
  EXPECT_EQ(c.typology, Typology::kMigrant);
  EXPECT_EQ(c.events, (std::vector<MobilityEvent>{{"A", "C", 2010}, {"B", "C", 2010}, {"C", "D", 2012}}));
  EXPECT_EQ(c.CountriesWithRole(Role::kEmigrant), (std::vector<CountryCode>{"A", "B"}));
  EXPECT_EQ(c.CountriesWithRole(Role::kImmigrant), (std::vector<CountryCode>{"D"}));
  EXPECT_FALSE(c.roles.count("C"));
}

TEST(ClassifyTest, AgreesWithOracleOnSmallTimelines) {
  for (const auto &t : testing::EnumerateTimelines("ABC", 3, 2)) {
    AffiliationTimeline timeline;
    for (size_t i = 0; i < t.size(); ++i) {
      CountrySet set;
      for (char ch : t[i]) set.insert(std::string(1, ch));
      timeline.entries.push_back({2008 + static_cast<int>(i), "p" + std::to_string(i), set});
    }
    const auto got = Classify(timeline);
    const auto want = testing::ClassifyOracle(t);
    ASSERT_EQ(TypologyName(got.typology), want.typology);
    std::map<char, std::string> roles;
    for (const auto &[country, role] : got.roles) roles[country[0]] = RoleName(role);
    ASSERT_EQ(roles, want.roles);
  }
}

TEST(ClassifyTest, LabelInvariance) {
  const std::map<CountryCode, CountryCode> relabel = {{"A", "C"}, {"B", "A"}, {"C", "B"}};
  for (const auto &t : testing::EnumerateTimelines("ABC", 3, 2)) {
    AffiliationTimeline a, b;
    for (size_t i = 0; i < t.size(); ++i) {
      CountrySet sa, sb;
      for (char ch : t[i]) {
        sa.insert(std::string(1, ch));
        sb.insert(relabel.at(std::string(1, ch)));
      }
      a.entries.push_back({2008 + static_cast<int>(i), "p", sa});
      b.entries.push_back({2008 + static_cast<int>(i), "p", sb});
    }
    const auto ca = Classify(a), cb = Classify(b);
    ASSERT_EQ(ca.typology, cb.typology);
    for (const auto &[country, role] : ca.roles) ASSERT_EQ(cb.roles.at(relabel.at(country)), role);
  }
}

TEST(BuildTimelineTest, OrdersByYearThenPubId) {
  std::vector<PublicationRecord> records(4);
  records[0] = {"p2", 2010, {}, {}, {{"Ali", "S", {}, {"SAU"}, {}}}};
  records[1] = {"p1", 2008, {}, {}, {{"Ali", "S", {}, {"EGY"}, {}}}};
  records[2] = {"p0", 2010, {}, {}, {{"Ali", "S", {}, {"JOR"}, {}}}};
  records[3] = {"p9", 2019, {}, {}, {{"Ali", "S", {}, {"FRA"}, {}}}};
  AuthorCluster cluster{"ali_s#0", MakeNameKey("Ali", "S"), {{"p0", 0}, {"p1", 0}, {"p2", 0}, {"p9", 0}}};
  const auto index = IndexRecords(records);
  const auto t = BuildTimeline(cluster, index, {2008, 2017});
  ASSERT_EQ(t.entries.size(), 3u);
  EXPECT_EQ(t.entries[0], (TimelineEntry{2008, "p1", {"EGY"}}));
  EXPECT_EQ(t.entries[1], (TimelineEntry{2010, "p0", {"JOR"}}));
  EXPECT_EQ(t.entries[2], (TimelineEntry{2010, "p2", {"SAU"}}));
  EXPECT_EQ(t.origin(), (CountrySet{"EGY"}));

  AuthorCluster one{"ali_s#1", MakeNameKey("Ali", "S"), {{"p1", 0}}};
  EXPECT_EQ(BuildTimeline(one, index, {2008, 2017}).entries.size(), 1u);
}

TEST(BuildTimelineTest, PermutationInvariant) {
  std::mt19937 rng(9);
  std::vector<PublicationRecord> records;
  AuthorCluster cluster{"k#0", MakeNameKey("K", "K"), {}};
  const std::vector<std::string> countries = {"EGY", "FRA", "SAU", "USA"};
  for (int i = 0; i < 40; ++i) {
    PublicationRecord r;
    r.pub_id = "p" + std::to_string(rng() % 1000) + "_" + std::to_string(i);
    r.year = 2008 + static_cast<int>(rng() % 10);
    r.mentions.push_back({"K", "K", {}, {countries[rng() % 4]}, {}});
    records.push_back(r);
    cluster.members.push_back({r.pub_id, 0});
  }
  auto sorted = records;
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
    return std::tie(a.year, a.pub_id) < std::tie(b.year, b.pub_id);
  });
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    std::shuffle(cluster.members.begin(), cluster.members.end(), rng);
    const auto index = IndexRecords(records);
    const auto t = BuildTimeline(cluster, index, {2008, 2017});
    ASSERT_EQ(t.entries.size(), sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i) {
      EXPECT_EQ(t.entries[i].pub_id, sorted[i].pub_id);
      EXPECT_EQ(t.entries[i].countries, sorted[i].mentions[0].countries);
    }
  }
}

TEST(CountryMobilityTableTest, CountsAndExclusion) {
  EXPECT_TRUE(CountryMobilityTable({}, 30).empty());
  std::vector<MobilityClassification> cs;
  cs.push_back(Classify(Timeline({{2009, {"A"}}, {2013, {"B"}}})));
  auto table = CountryMobilityTable(cs, 0);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].country, "A");
  EXPECT_EQ(table[0].emigrant, 1u);
  EXPECT_EQ(table[1].immigrant, 1u);

  // 20 migrants C->D and 30 travellers C->C+E.
  cs.clear();
  for (int i = 0; i < 20; ++i) cs.push_back(Classify(Timeline({{2009, {"C"}}, {2013, {"D"}}})));
  for (int i = 0; i < 30; ++i) cs.push_back(Classify(Timeline({{2009, {"C"}}, {2013, {"C", "E"}}})));
  cs.push_back(Classify(Timeline({{2009, {"F", "G"}}, {2013, {"F", "G"}}})));
  table = CountryMobilityTable(cs, 30);
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[0].country, "C");
  EXPECT_EQ(table[0].emigrant, 20u);
  EXPECT_EQ(table[0].outgoing, 30u);
  EXPECT_FALSE(table[0].excluded);
  EXPECT_EQ(table[1].immigrant, 20u);
  EXPECT_TRUE(table[1].excluded);
  EXPECT_EQ(table[2].incoming, 30u);
  EXPECT_FALSE(table[2].excluded);
}

TEST(ClassificationSerializationTest, RoundTrip) {
  const auto c = Classify(Timeline({{2008, {"A", "B"}}, {2010, {"C"}}, {2012, {"D"}}}));
  const auto line = SerializeClassification(c);
  const auto back = ParseClassification(line);
  EXPECT_EQ(back.typology, c.typology);
  EXPECT_EQ(back.roles, c.roles);
  EXPECT_EQ(back.events, c.events);
  EXPECT_EQ(SerializeClassification(back), line);
  EXPECT_THROW(ParseClassification("{}"), Error);
  EXPECT_THROW(ParseTypology("Nomad"), Error);
}

}  // namespace
}  // namespace scimob
