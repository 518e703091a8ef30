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

#include "scimob/netmetrics.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "scimob/error.h"
#include "scimob/indicators.h"
#include "support/oracles.h"

namespace scimob {
namespace {

std::string Label(int i) { return "C" + std::to_string(10 + i); }

CountryGraph FromMatrix(const testing::MatrixGraph &m) {
  CountryGraph g;
  for (int i = 0; i < m.n; ++i) g.AddNode(Label(i));
  for (int i = 0; i < m.n; ++i) {
    for (int j = i + 1; j < m.n; ++j) {
      if (m.adj[i][j]) g.AddEdgeWeight(Label(i), Label(j));
    }
  }
  return g;
}

testing::MatrixGraph Star(int n) {
  testing::MatrixGraph m(n);
  for (int i = 1; i < n; ++i) m.Connect(0, i);
  return m;
}

testing::MatrixGraph Cycle(int n) {
  testing::MatrixGraph m(n);
  for (int i = 0; i < n; ++i) m.Connect(i, (i + 1) % n);
  return m;
}

testing::MatrixGraph Complete(int n) {
  testing::MatrixGraph m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) m.Connect(i, j);
  }
  return m;
}

TEST(DensityTest, PaperCountsAndSmallCases) {
  EXPECT_EQ(FormatFixed(*DensityFromCounts(176, 1335), 2), "0.09");
  EXPECT_EQ(FormatFixed(*DensityFromCounts(215, 3124), 2), "0.14");
  EXPECT_NEAR(*DensityFromCounts(176, 1335), 0.086688, 1e-6);
  EXPECT_NEAR(*DensityFromCounts(215, 3124), 0.135796, 1e-6);
  EXPECT_DOUBLE_EQ(*Density(FromMatrix(Complete(5))), 1.0);
  EXPECT_FALSE(DensityFromCounts(1, 0));
  EXPECT_FALSE(Density(CountryGraph{}));
}

TEST(StructuralMeasuresTest, HandExamples) {
  EXPECT_DOUBLE_EQ(AverageDegree(FromMatrix(Cycle(6))), 2.0);
  EXPECT_DOUBLE_EQ(AverageDegree(FromMatrix(Star(5))), 1.6);
  EXPECT_DOUBLE_EQ(AverageDegree(CountryGraph{}), 0.0);

  testing::MatrixGraph path(3);
  path.Connect(0, 1);
  path.Connect(1, 2);
  EXPECT_EQ(Diameter(FromMatrix(path)).value, 2);
  EXPECT_EQ(Diameter(FromMatrix(Complete(4))).value, 1);
  CountryGraph lonely;
  lonely.AddNode("EGY");
  EXPECT_FALSE(Diameter(lonely).value);

  testing::MatrixGraph split(4);
  split.Connect(0, 1);
  split.Connect(2, 3);
  const auto d = Diameter(FromMatrix(split));
  EXPECT_EQ(d.value, 1);
  EXPECT_TRUE(d.disconnected);

  EXPECT_DOUBLE_EQ(ClusteringCoefficient(FromMatrix(Complete(3))), 1.0);
  EXPECT_DOUBLE_EQ(ClusteringCoefficient(FromMatrix(path)), 0.0);

  EXPECT_FALSE(Assortativity(FromMatrix(Cycle(5))));
  EXPECT_FALSE(Assortativity(lonely));
  EXPECT_LT(*Assortativity(FromMatrix(Star(6))), 0.0);
}

TEST(CentralityTest, StarCenterAndLeaf) {
  const auto g = FromMatrix(Star(5));
  EXPECT_EQ(DegreeCentrality(g, Label(0)), 4);
  EXPECT_DOUBLE_EQ(ClosenessCentrality(g, Label(0)).value, 1.0);
  EXPECT_NEAR(ClosenessCentrality(g, Label(1)).value, 4.0 / 7.0, 1e-12);
  EXPECT_THROW(DegreeCentrality(g, "ZZZ"), Error);

  CountryGraph h = g;
  h.AddNode("ISO");
  const auto isolated = ClosenessCentrality(h, "ISO");
  EXPECT_TRUE(isolated.isolated);
  EXPECT_EQ(isolated.value, 0.0);
}

TEST(GraphMetricsTest, MatchBruteForceOracles) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const double p = (rng() % 100) / 100.0;
    testing::MatrixGraph m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if ((rng() % 1000) / 1000.0 < p) m.Connect(i, j);
      }
    }
    const auto g = FromMatrix(m);
    ASSERT_EQ(Diameter(g).value, testing::OracleDiameter(m));
    ASSERT_NEAR(ClusteringCoefficient(g), testing::OracleClustering(m), 1e-9);
    ASSERT_NEAR(AverageDegree(g), testing::OracleAverageDegree(m), 1e-9);
    const auto a = Assortativity(g);
    const auto oa = testing::OracleAssortativity(m);
    ASSERT_EQ(a.has_value(), oa.has_value());
    if (a) ASSERT_NEAR(*a, *oa, 1e-9);
    for (int v = 0; v < n; ++v) {
      ASSERT_NEAR(ClosenessCentrality(g, Label(v)).value, testing::OracleCloseness(m, v), 1e-9);
      ASSERT_EQ(DegreeCentrality(g, Label(v)), m.Degree(v));
    }
  }
}

TEST(GraphMetricsTest, InvariantUnderRelabeling) {
  std::mt19937 rng(77);
  testing::MatrixGraph m(10);
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      if (rng() % 3 == 0) m.Connect(i, j);
    }
  }
  std::vector<int> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  testing::MatrixGraph r(10);
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      if (m.adj[i][j]) r.Connect(perm[i], perm[j]);
    }
  }
  const auto a = ComputeStructuralMeasures(FromMatrix(m));
  const auto b = ComputeStructuralMeasures(FromMatrix(r));
  EXPECT_EQ(a.edge_count, b.edge_count);
  EXPECT_EQ(a.diameter.value, b.diameter.value);
  EXPECT_NEAR(a.clustering_coefficient, b.clustering_coefficient, 1e-12);
  EXPECT_EQ(a.assortativity.has_value(), b.assortativity.has_value());
  if (a.assortativity) EXPECT_NEAR(*a.assortativity, *b.assortativity, 1e-12);
}

PublicationRecord Paper(std::string id, std::vector<CountrySet> mentions) {
  PublicationRecord r;
  r.pub_id = std::move(id);
  r.year = 2010;
  for (auto &c : mentions) r.mentions.push_back({"X", "Y", {}, std::move(c), {}});
  return r;
}

TEST(CoauthorshipNetworkTest, PairRule) {
  auto g = BuildCoauthorshipNetwork(std::vector<PublicationRecord>{Paper("p", {{"A", "B"}, {"C"}})});
  EXPECT_EQ(g.Weight("A", "B"), 1);
  EXPECT_EQ(g.Weight("C", "A"), 1);
  EXPECT_EQ(g.Weight("B", "C"), 1);
  g = BuildCoauthorshipNetwork(
      std::vector<PublicationRecord>{Paper("p", {{"A"}, {"B"}, {"A"}}), Paper("q", {{"A", "B"}})});
  EXPECT_EQ(g.Weight("A", "B"), 2);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(CoauthorshipNetworkTest, MatchesDoubleLoop) {
  std::mt19937 rng(8);
  const std::vector<std::string> countries = {"A", "B", "C", "D", "E", "F"};
  std::vector<PublicationRecord> papers;
  for (int i = 0; i < 200; ++i) {
    std::vector<CountrySet> mentions;
    for (int k = 0, n = 1 + rng() % 4; k < n; ++k) mentions.push_back({countries[rng() % 6]});
    papers.push_back(Paper("p" + std::to_string(i), mentions));
  }
  const auto g = BuildCoauthorshipNetwork(papers);
  for (const auto &a : countries) {
    for (const auto &b : countries) {
      if (a >= b) continue;
      long want = 0;
      for (const auto &p : papers) {
        const auto set = p.Countries();
        want += set.count(a) && set.count(b);
      }
      ASSERT_EQ(g.Weight(a, b), want) << a << b;
    }
  }
}

TEST(MobilityNetworkTest, DirectedFlowsWithDedup) {
  const std::vector<ResearcherMove> moves = {
      {"r1", "A", "B"}, {"r2", "A", "B"}, {"r3", "A", "B"}, {"r4", "B", "A"}, {"r1", "A", "B"}};
  const auto g = BuildMobilityNetwork(moves);
  EXPECT_TRUE(g.directed());
  EXPECT_EQ(g.Flow("A", "B"), 3);
  EXPECT_EQ(g.Flow("B", "A"), 1);
  EXPECT_EQ(g.Weight("A", "B"), 4);
  for (const auto &[pair, w] : g.edges()) {
    EXPECT_EQ(w, g.Flow(pair.first, pair.second) + g.Flow(pair.second, pair.first));
  }
}

TEST(CountryGraphTest, JsonAndEdgeListRoundTrip) {
  const auto g = BuildMobilityNetwork(std::vector<ResearcherMove>{{"r1", "EGY", "FRA"}, {"r2", "FRA", "EGY"}});
  EXPECT_EQ(CountryGraph::FromJsonText(g.ToJsonText()), g);
  std::ostringstream out;
  g.ExportEdgeList(out);
  EXPECT_EQ(out.str(), "from\tto\tweight\tdirection\nEGY\tFRA\t1\t->\nFRA\tEGY\t1\t->\n");
  CountryGraph u;
  u.AddEdgeWeight("FRA", "EGY", 3);
  u.AddEdgeWeight("EGY", "EGY", 3);
  std::ostringstream out2;
  u.ExportEdgeList(out2);
  EXPECT_EQ(out2.str(), "country_a\tcountry_b\tweight\nEGY\tFRA\t3\n");
}

TEST(RegionalFlowMatrixTest, HandBuiltAndConservation) {
  const auto registry = CountryRegistry::Load(std::string(SCIMOB_DATA_DIR) + "/registry.tsv");
  EXPECT_EQ(BuildRegionalFlowMatrix({}, registry).Total(), 0u);
  const std::vector<ResearcherMove> moves = {{"r1", "EGY", "FRA"},
                                             {"r2", "SAU", "DEU"},
                                             {"r3", "CHN", "JOR"},
                                             {"r3", "CHN", "IRN"}};
  const auto m = BuildRegionalFlowMatrix(moves, registry);
  EXPECT_EQ(m.Cell("MENA", "Europe"), 2u);
  EXPECT_EQ(m.Cell("Asia", "MENA"), 1u);
  EXPECT_EQ(m.Total(), 3u);
  EXPECT_EQ(m.RowSum("MENA"), 2u);
  EXPECT_EQ(m.ColumnSum("MENA"), 1u);

  const auto shares = PartnerRegionShares(m, "MENA");
  size_t inbound = 0, outbound = 0;
  double combined = 0;
  for (const auto &s : shares) {
    inbound += s.inbound;
    outbound += s.outbound;
    combined += s.combined_share;
  }
  EXPECT_EQ(inbound, 1u);
  EXPECT_EQ(outbound, 2u);
  EXPECT_NEAR(combined, 1.0, 1e-12);
}

TEST(MovesTest, DirectionalAndMigrantMoves) {
  MobilityClassification migrant;
  migrant.cluster_id = "m";
  migrant.typology = Typology::kMigrant;
  migrant.roles = {{"A", Role::kEmigrant}, {"C", Role::kImmigrant}};
  migrant.events = {{"A", "B", 2010}, {"B", "C", 2012}};
  MobilityClassification nondir;
  nondir.cluster_id = "n";
  nondir.typology = Typology::kTravellerNonDirectional;
  nondir.events = {{"A", "B", 2010}};
  const std::vector<MobilityClassification> cs = {migrant, nondir};
  const auto moves = DirectionalMoves(cs);
  ASSERT_EQ(moves.size(), 2u);
  EXPECT_EQ(moves[0].from, "A");
  EXPECT_EQ(moves[1].to, "C");
  const auto mm = MigrantMoves(cs);
  ASSERT_EQ(mm.size(), 1u);
  EXPECT_EQ(mm[0].from, "A");
  EXPECT_EQ(mm[0].to, "C");
}

}  // namespace
}  // namespace scimob
