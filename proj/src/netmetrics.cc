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
#include <deque>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "scimob/error.h"

namespace scimob {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

CountryPair Undirected(const CountryCode &a, const CountryCode &b) {
  return a < b ? CountryPair{a, b} : CountryPair{b, a};
}

// BFS hop distances from `source`; -1 marks unreachable vertices.
std::vector<int> Distances(const PresenceGraph &g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.adjacency[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

int RequireVertex(const PresenceGraph &g, const CountryCode &country) {
  const int i = g.IndexOf(country);
  if (i < 0) throw Error(ErrorKind::kInvalidArgument, "country not in graph: " + country);
  return i;
}

}  // namespace

// ---------------------------------------------------------------------------
// CountryGraph

void CountryGraph::AddNode(const CountryCode &country) { nodes_.insert(country); }

void CountryGraph::AddEdgeWeight(const CountryCode &a, const CountryCode &b, long weight) {
  nodes_.insert(a);
  nodes_.insert(b);
  if (a == b || weight <= 0) return;
  edges_[Undirected(a, b)] += weight;
}

void CountryGraph::AddFlow(const CountryCode &from, const CountryCode &to, long weight) {
  directed_ = true;
  nodes_.insert(from);
  nodes_.insert(to);
  if (from == to || weight <= 0) return;
  flows_[{from, to}] += weight;
  edges_[Undirected(from, to)] += weight;
}

long CountryGraph::Weight(const CountryCode &a, const CountryCode &b) const {
  auto it = edges_.find(Undirected(a, b));
  return it == edges_.end() ? 0 : it->second;
}

long CountryGraph::Flow(const CountryCode &from, const CountryCode &to) const {
  auto it = flows_.find({from, to});
  return it == flows_.end() ? 0 : it->second;
}

void CountryGraph::ExportEdgeList(std::ostream &out) const {
  if (directed_) {
    out << "from\tto\tweight\tdirection\n";
    for (const auto &[pair, w] : flows_) {
      out << pair.first << '\t' << pair.second << '\t' << w << "\t->\n";
    }
  } else {
    out << "country_a\tcountry_b\tweight\n";
    for (const auto &[pair, w] : edges_) {
      out << pair.first << '\t' << pair.second << '\t' << w << '\n';
    }
  }
}

std::string CountryGraph::ToJsonText() const {
  ordered_json doc;
  doc["directed"] = directed_;
  doc["nodes"] = std::vector<std::string>(nodes_.begin(), nodes_.end());
  ordered_json edges = ordered_json::array();
  for (const auto &[pair, w] : edges_) edges.push_back({pair.first, pair.second, w});
  doc["edges"] = std::move(edges);
  if (directed_) {
    ordered_json flows = ordered_json::array();
    for (const auto &[pair, w] : flows_) flows.push_back({pair.first, pair.second, w});
    doc["flows"] = std::move(flows);
  }
  return doc.dump();
}

CountryGraph CountryGraph::FromJsonText(const std::string &text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::kParse, "graph document is not a JSON object");
  }
  try {
    CountryGraph g;
    for (const auto &n : doc.at("nodes")) g.AddNode(n.get<std::string>());
    if (doc.value("directed", false)) {
      g.directed_ = true;
      for (const auto &f : doc.at("flows")) {
        g.AddFlow(f.at(0).get<std::string>(), f.at(1).get<std::string>(), f.at(2).get<long>());
      }
    } else {
      for (const auto &e : doc.at("edges")) {
        g.AddEdgeWeight(e.at(0).get<std::string>(), e.at(1).get<std::string>(),
                        e.at(2).get<long>());
      }
    }
    return g;
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("graph document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Construction

CountryGraph BuildCoauthorshipNetwork(std::span<const PublicationRecord> records) {
  CountryGraph g;
  for (const auto &record : records) {
    const CountrySet countries = record.Countries();
    for (const auto &c : countries) g.AddNode(c);
    for (auto a = countries.begin(); a != countries.end(); ++a) {
      for (auto b = std::next(a); b != countries.end(); ++b) g.AddEdgeWeight(*a, *b, 1);
    }
  }
  return g;
}

CountryGraph BuildMobilityNetwork(std::span<const ResearcherMove> moves) {
  std::set<std::tuple<std::string, CountryCode, CountryCode>> distinct;
  for (const auto &m : moves) {
    if (m.from != m.to) distinct.emplace(m.researcher, m.from, m.to);
  }
  CountryGraph g;
  g.directed_ = true;
  for (const auto &[_, from, to] : distinct) g.AddFlow(from, to, 1);
  return g;
}

std::vector<ResearcherMove> DirectionalMoves(
    std::span<const MobilityClassification> classifications) {
  std::vector<ResearcherMove> out;
  for (const auto &c : classifications) {
    if (!c.IsDirectionalMobile()) continue;
    for (const auto &e : c.events) out.push_back({c.cluster_id, e.from, e.to});
  }
  return out;
}

std::vector<ResearcherMove> MigrantMoves(std::span<const MobilityClassification> classifications) {
  std::vector<ResearcherMove> out;
  for (const auto &c : classifications) {
    if (c.typology != Typology::kMigrant) continue;
    for (const auto &from : c.CountriesWithRole(Role::kEmigrant)) {
      for (const auto &to : c.CountriesWithRole(Role::kImmigrant)) {
        out.push_back({c.cluster_id, from, to});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metrics

PresenceGraph PresenceGraph::From(const CountryGraph &g) {
  PresenceGraph p;
  p.labels.assign(g.nodes().begin(), g.nodes().end());
  p.adjacency.resize(p.labels.size());
  for (const auto &[pair, _] : g.edges()) {
    const int a = p.IndexOf(pair.first);
    const int b = p.IndexOf(pair.second);
    p.adjacency[a].push_back(b);
    p.adjacency[b].push_back(a);
  }
  for (auto &list : p.adjacency) std::sort(list.begin(), list.end());
  return p;
}

size_t PresenceGraph::edge_count() const {
  size_t twice = 0;
  for (const auto &list : adjacency) twice += list.size();
  return twice / 2;
}

int PresenceGraph::IndexOf(const CountryCode &country) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), country);
  if (it == labels.end() || *it != country) return -1;
  return static_cast<int>(it - labels.begin());
}

std::optional<double> DensityFromCounts(size_t vertex_count, size_t edge_count) {
  if (vertex_count < 2) return std::nullopt;
  const double n = static_cast<double>(vertex_count);
  return static_cast<double>(edge_count) / (n * (n - 1) / 2.0);
}

std::optional<double> Density(const CountryGraph &g) {
  return DensityFromCounts(g.vertex_count(), g.edge_count());
}

double AverageDegree(const CountryGraph &g) {
  if (g.vertex_count() == 0) return 0;
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
}

DiameterResult Diameter(const CountryGraph &g) {
  DiameterResult result;
  if (g.edge_count() == 0) {
    result.disconnected = g.vertex_count() > 1;
    return result;
  }
  const PresenceGraph p = PresenceGraph::From(g);
  int best = 0;
  for (size_t s = 0; s < p.vertex_count(); ++s) {
    for (int d : Distances(p, static_cast<int>(s))) {
      if (d < 0) {
        result.disconnected = true;
      } else {
        best = std::max(best, d);
      }
    }
  }
  result.value = best;
  return result;
}

double ClusteringCoefficient(const CountryGraph &g) {
  const PresenceGraph p = PresenceGraph::From(g);
  if (p.vertex_count() == 0) return 0;
  double sum = 0;
  for (const auto &neighbours : p.adjacency) {
    const size_t k = neighbours.size();
    if (k < 2) continue;
    size_t links = 0;
    for (size_t i = 0; i < k; ++i) {
      const auto &adj_i = p.adjacency[neighbours[i]];
      for (size_t j = i + 1; j < k; ++j) {
        if (std::binary_search(adj_i.begin(), adj_i.end(), neighbours[j])) ++links;
      }
    }
    sum += static_cast<double>(links) / (static_cast<double>(k) * (k - 1) / 2.0);
  }
  return sum / static_cast<double>(p.vertex_count());
}

std::optional<double> Assortativity(const CountryGraph &g) {
  const PresenceGraph p = PresenceGraph::From(g);
  const size_t m = p.edge_count();
  if (m == 0) return std::nullopt;
  // Newman's edge-sum form: with each edge seen from both ends the two
  // endpoint-degree series share mean and variance.
  double sum_product = 0, sum_mean = 0, sum_square = 0;
  for (size_t u = 0; u < p.vertex_count(); ++u) {
    const double du = static_cast<double>(p.adjacency[u].size());
    for (int v : p.adjacency[u]) {
      if (static_cast<size_t>(v) < u) continue;
      const double dv = static_cast<double>(p.adjacency[v].size());
      sum_product += du * dv;
      sum_mean += 0.5 * (du + dv);
      sum_square += 0.5 * (du * du + dv * dv);
    }
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  const double mean = sum_mean * inv_m;
  const double numerator = sum_product * inv_m - mean * mean;
  const double denominator = sum_square * inv_m - mean * mean;
  if (std::abs(denominator) < 1e-12) return std::nullopt;
  return numerator / denominator;
}

int DegreeCentrality(const CountryGraph &g, const CountryCode &country) {
  const PresenceGraph p = PresenceGraph::From(g);
  return static_cast<int>(p.adjacency[RequireVertex(p, country)].size());
}

ClosenessResult ClosenessCentrality(const CountryGraph &g, const CountryCode &country) {
  const PresenceGraph p = PresenceGraph::From(g);
  const int source = RequireVertex(p, country);
  long total = 0;
  long reached = 0;
  for (int d : Distances(p, source)) {
    if (d > 0) {
      total += d;
      ++reached;
    }
  }
  if (reached == 0) return {0.0, true};
  return {static_cast<double>(reached) / static_cast<double>(total), false};
}

StructuralMeasures ComputeStructuralMeasures(const CountryGraph &g) {
  StructuralMeasures s;
  s.vertex_count = g.vertex_count();
  s.edge_count = g.edge_count();
  s.density = Density(g);
  s.average_degree = AverageDegree(g);
  s.diameter = Diameter(g);
  s.clustering_coefficient = ClusteringCoefficient(g);
  s.assortativity = Assortativity(g);
  return s;
}

// ---------------------------------------------------------------------------
// Regional flows

void RegionalFlowMatrix::Add(const std::string &from_region, const std::string &to_region,
                             size_t count) {
  regions_.insert(from_region);
  regions_.insert(to_region);
  cells_[{from_region, to_region}] += count;
}

size_t RegionalFlowMatrix::Cell(const std::string &from_region,
                                const std::string &to_region) const {
  auto it = cells_.find({from_region, to_region});
  return it == cells_.end() ? 0 : it->second;
}

size_t RegionalFlowMatrix::RowSum(const std::string &from_region) const {
  size_t sum = 0;
  for (const auto &[key, n] : cells_) {
    if (key.first == from_region) sum += n;
  }
  return sum;
}

size_t RegionalFlowMatrix::ColumnSum(const std::string &to_region) const {
  size_t sum = 0;
  for (const auto &[key, n] : cells_) {
    if (key.second == to_region) sum += n;
  }
  return sum;
}

size_t RegionalFlowMatrix::Total() const {
  size_t sum = 0;
  for (const auto &[_, n] : cells_) sum += n;
  return sum;
}

RegionalFlowMatrix BuildRegionalFlowMatrix(std::span<const ResearcherMove> moves,
                                           const CountryRegistry &registry) {
  std::set<std::tuple<std::string, std::string, std::string>> distinct;
  for (const auto &m : moves) {
    distinct.emplace(m.researcher, registry.RegionOf(m.from), registry.RegionOf(m.to));
  }
  RegionalFlowMatrix matrix;
  for (const auto &[_, from, to] : distinct) matrix.Add(from, to);
  return matrix;
}

std::vector<RegionShare> PartnerRegionShares(const RegionalFlowMatrix &matrix,
                                             const std::string &focus) {
  std::vector<RegionShare> out;
  const double inbound_total = static_cast<double>(matrix.ColumnSum(focus));
  const double outbound_total = static_cast<double>(matrix.RowSum(focus));
  // Flows inside the focus region are both inbound and outbound; the
  // combined share counts them once.
  const double combined_total =
      inbound_total + outbound_total - static_cast<double>(matrix.Cell(focus, focus));
  for (const auto &region : matrix.regions()) {
    RegionShare share;
    share.region = region;
    share.inbound = matrix.Cell(region, focus);
    share.outbound = matrix.Cell(focus, region);
    if (share.inbound == 0 && share.outbound == 0) continue;
    const double combined = region == focus
                                ? static_cast<double>(share.inbound)
                                : static_cast<double>(share.inbound + share.outbound);
    share.inbound_share = inbound_total > 0 ? share.inbound / inbound_total : 0;
    share.outbound_share = outbound_total > 0 ? share.outbound / outbound_total : 0;
    share.combined_share = combined_total > 0 ? combined / combined_total : 0;
    out.push_back(share);
  }
  return out;
}

}  // namespace scimob
