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

#ifndef SCIMOB_NETMETRICS_H_
#define SCIMOB_NETMETRICS_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scimob/corpus.h"
#include "scimob/mobility.h"

namespace scimob {

using CountryPair = std::pair<CountryCode, CountryCode>;

// A researcher-level move, used for flow counting.
struct ResearcherMove {
  std::string researcher;
  CountryCode from;
  CountryCode to;
};

// Country-level graph. Undirected weights are keyed by the ordered pair
// (a, b) with a < b. Mobility graphs also keep directed flows, and every
// undirected weight is the sum of the two directed flows.
class CountryGraph {
 public:
  void AddNode(const CountryCode &country);
  // Adds to the undirected weight of {a, b}. Self-loops are ignored.
  void AddEdgeWeight(const CountryCode &a, const CountryCode &b, long weight = 1);
  // Adds to the directed flow from -> to and to the undirected {from, to}.
  void AddFlow(const CountryCode &from, const CountryCode &to, long weight = 1);

  const std::set<CountryCode> &nodes() const { return nodes_; }
  const std::map<CountryPair, long> &edges() const { return edges_; }
  const std::map<CountryPair, long> &flows() const { return flows_; }
  bool directed() const { return directed_; }

  long Weight(const CountryCode &a, const CountryCode &b) const;
  long Flow(const CountryCode &from, const CountryCode &to) const;

  size_t vertex_count() const { return nodes_.size(); }
  size_t edge_count() const { return edges_.size(); }

  // Tab-separated rows "a b weight" (undirected) or "from to weight ->"
  // (directed flows), sorted.
  void ExportEdgeList(std::ostream &out) const;
  std::string ToJsonText() const;
  static CountryGraph FromJsonText(const std::string &text);

  bool operator==(const CountryGraph &) const = default;

 private:
  friend CountryGraph BuildMobilityNetwork(std::span<const ResearcherMove> moves);

  std::set<CountryCode> nodes_;
  std::map<CountryPair, long> edges_;
  std::map<CountryPair, long> flows_;
  bool directed_ = false;
};

// Every unordered pair of distinct countries on a publication gains 1,
// once per publication. Every country seen becomes a node.
CountryGraph BuildCoauthorshipNetwork(std::span<const PublicationRecord> records);

// Directed flows count distinct researchers per ordered country pair.
CountryGraph BuildMobilityNetwork(std::span<const ResearcherMove> moves);

// Moves from the events of migrants and directional travellers.
std::vector<ResearcherMove> DirectionalMoves(std::span<const MobilityClassification> classifications);

// Moves pairing each migrant's Emigrant countries with their Immigrant
// countries (origin to final destination).
std::vector<ResearcherMove> MigrantMoves(std::span<const MobilityClassification> classifications);

// Unweighted presence view with integer vertices, used by every metric.
struct PresenceGraph {
  std::vector<CountryCode> labels;
  std::vector<std::vector<int>> adjacency;  // sorted neighbour lists

  static PresenceGraph From(const CountryGraph &g);
  size_t vertex_count() const { return labels.size(); }
  size_t edge_count() const;
  int IndexOf(const CountryCode &country) const;  // -1 if absent
};

// m / (n(n-1)/2); undefined for n < 2.
std::optional<double> DensityFromCounts(size_t vertex_count, size_t edge_count);
std::optional<double> Density(const CountryGraph &g);

// 2m / n; 0 for an empty graph.
double AverageDegree(const CountryGraph &g);

struct DiameterResult {
  std::optional<int> value;  // undefined when there are no edges
  bool disconnected = false;
};
// Longest shortest path (in hops) over connected pairs.
DiameterResult Diameter(const CountryGraph &g);

// Mean local clustering; vertices of degree < 2 contribute 0.
double ClusteringCoefficient(const CountryGraph &g);

// Degree Pearson correlation over both orientations of every edge.
// Undefined with no edges or zero degree variance.
std::optional<double> Assortativity(const CountryGraph &g);

// Neighbour count. Throws Error for a country outside the graph.
int DegreeCentrality(const CountryGraph &g, const CountryCode &country);

struct ClosenessResult {
  double value = 0;
  bool isolated = false;
};
// (n'-1) / sum of distances within the country's component of size n'.
ClosenessResult ClosenessCentrality(const CountryGraph &g, const CountryCode &country);

struct StructuralMeasures {
  size_t vertex_count = 0;
  size_t edge_count = 0;
  std::optional<double> density;
  double average_degree = 0;
  DiameterResult diameter;
  double clustering_coefficient = 0;
  std::optional<double> assortativity;
};

StructuralMeasures ComputeStructuralMeasures(const CountryGraph &g);

// Distinct researchers per ordered (origin region, destination region).
class RegionalFlowMatrix {
 public:
  void Add(const std::string &from_region, const std::string &to_region, size_t count = 1);

  size_t Cell(const std::string &from_region, const std::string &to_region) const;
  size_t RowSum(const std::string &from_region) const;
  size_t ColumnSum(const std::string &to_region) const;
  size_t Total() const;
  const std::set<std::string> &regions() const { return regions_; }
  const std::map<std::pair<std::string, std::string>, size_t> &cells() const { return cells_; }

 private:
  std::set<std::string> regions_;
  std::map<std::pair<std::string, std::string>, size_t> cells_;
};

// A researcher with several moves between the same two regions counts once
// for that region pair.
RegionalFlowMatrix BuildRegionalFlowMatrix(std::span<const ResearcherMove> moves,
                                           const CountryRegistry &registry);

// Partner-region shares of the flows touching `focus` (normally MENA).
struct RegionShare {
  std::string region;
  size_t inbound = 0;   // region -> focus
  size_t outbound = 0;  // focus -> region
  double inbound_share = 0;
  double outbound_share = 0;
  double combined_share = 0;
};
std::vector<RegionShare> PartnerRegionShares(const RegionalFlowMatrix &matrix,
                                             const std::string &focus);

}  // namespace scimob

#endif  // SCIMOB_NETMETRICS_H_
