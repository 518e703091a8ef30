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

#include "scimob/disambig.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scimob/error.h"
#include "scimob/names.h"

namespace scimob {

using nlohmann::json;

std::string NameKey::ToString() const {
  return last + "_" + (initial ? std::string(1, initial) : std::string("?"));
}

NameKey MakeNameKey(std::string_view last_name, std::string_view first_name) {
  return NameKey{NormalizeName(last_name), FirstInitial(first_name)};
}

NameKey MakeNameKey(const AuthorMention &mention) {
  return MakeNameKey(mention.last_name, mention.first_name);
}

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<std::string> NormalizedEmail(const std::optional<std::string> &email) {
  if (!email) return std::nullopt;
  std::string e = Lower(*email);
  e.erase(std::remove_if(e.begin(), e.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          e.end());
  if (e.empty()) return std::nullopt;
  return e;
}

// Union-find over block positions.
class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }
  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

template <typename T>
size_t IntersectionSize(const std::set<T> &a, const std::set<T> &b) {
  size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

double Pairs(size_t n) { return static_cast<double>(n) * (n - 1) / 2.0; }

}  // namespace

std::vector<MentionContext> BuildContexts(std::span<const PublicationRecord> records) {
  std::vector<MentionContext> out;
  for (const auto &record : records) {
    std::vector<NameKey> keys;
    keys.reserve(record.mentions.size());
    for (const auto &m : record.mentions) keys.push_back(MakeNameKey(m));
    for (size_t i = 0; i < record.mentions.size(); ++i) {
      const auto &m = record.mentions[i];
      MentionContext ctx;
      ctx.ref = {record.pub_id, i};
      ctx.key = keys[i];
      ctx.email = NormalizedEmail(m.email);
      ctx.full_forename = FullForename(m.first_name);
      ctx.year = record.year;
      ctx.countries = m.countries;
      for (size_t j = 0; j < keys.size(); ++j) {
        if (j != i) ctx.coauthors.insert(keys[j]);
      }
      out.push_back(std::move(ctx));
    }
  }
  return out;
}

Blocks BlockMentions(std::span<const PublicationRecord> records) {
  Blocks blocks;
  for (const auto &record : records) {
    for (size_t i = 0; i < record.mentions.size(); ++i) {
      blocks[MakeNameKey(record.mentions[i])].push_back({record.pub_id, i});
    }
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Scoring

void ScoringConfig::Validate() const {
  for (double w : {email, shared_coauthor, country_year, first_name, cocitation}) {
    if (!(w >= 0)) {
      throw Error(ErrorKind::kInvalidArgument, "scoring weights must be >= 0");
    }
  }
  if (!(threshold > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "link threshold must be > 0");
  }
}

ScoringConfig ScoringConfig::FromJsonText(const std::string &text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::kParse, "weights must be a JSON object");
  }
  ScoringConfig c;
  auto read = [&](const char *key, double *slot) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_number()) {
        throw Error(ErrorKind::kParse, std::string("weight ") + key + " is not a number");
      }
      *slot = it->get<double>();
    }
  };
  read("email", &c.email);
  read("shared_coauthor", &c.shared_coauthor);
  read("country_year", &c.country_year);
  read("first_name", &c.first_name);
  read("cocitation", &c.cocitation);
  read("threshold", &c.threshold);
  for (const auto &[key, _] : doc.items()) {
    static const std::set<std::string> kKnown = {"email", "shared_coauthor",
                                                 "country_year", "first_name",
                                                 "cocitation", "threshold"};
    if (!kKnown.count(key)) {
      throw Error(ErrorKind::kParse, "unknown weight key " + key);
    }
  }
  c.Validate();
  return c;
}

ScoringConfig ScoringConfig::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open weights file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJsonText(ss.str());
}

std::string ScoringConfig::ToJsonText() const {
  nlohmann::ordered_json doc;
  doc["email"] = email;
  doc["shared_coauthor"] = shared_coauthor;
  doc["country_year"] = country_year;
  doc["first_name"] = first_name;
  doc["cocitation"] = cocitation;
  doc["threshold"] = threshold;
  return doc.dump();
}

PairFeatures ExtractFeatures(const MentionContext &a, const MentionContext &b) {
  PairFeatures f;
  if (a.email && b.email && *a.email == *b.email) f.email = 1;
  f.shared_coauthors = static_cast<double>(IntersectionSize(a.coauthors, b.coauthors));
  if (a.year == b.year && IntersectionSize(a.countries, b.countries) > 0) {
    f.country_year = 1;
  }
  if (!a.full_forename.empty() && a.full_forename == b.full_forename) f.first_name = 1;
  if (IntersectionSize(a.cited_works, b.cited_works) > 0) f.cocitation = 1;
  return f;
}

double Score(const PairFeatures &f, const ScoringConfig &c) {
  return c.email * f.email + c.shared_coauthor * f.shared_coauthors +
         c.country_year * f.country_year + c.first_name * f.first_name +
         c.cocitation * f.cocitation;
}

double ScorePair(const MentionContext &a, const MentionContext &b,
                 const ScoringConfig &config) {
  return Score(ExtractFeatures(a, b), config);
}

// ---------------------------------------------------------------------------
// Clustering

std::vector<AuthorCluster> ClusterBlock(std::span<const MentionContext> block,
                                        double threshold,
                                        const ScoringConfig &config) {
  if (block.empty()) return {};
  DisjointSets sets(block.size());
  for (size_t i = 0; i < block.size(); ++i) {
    for (size_t j = i + 1; j < block.size(); ++j) {
      if (sets.Find(i) == sets.Find(j)) continue;
      if (ScorePair(block[i], block[j], config) >= threshold) sets.Union(i, j);
    }
  }
  std::map<size_t, std::vector<MentionRef>> groups;
  for (size_t i = 0; i < block.size(); ++i) {
    groups[sets.Find(i)].push_back(block[i].ref);
  }
  std::vector<AuthorCluster> clusters;
  for (auto &[_, members] : groups) {
    std::sort(members.begin(), members.end());
    clusters.push_back({"", block.front().key, std::move(members)});
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const AuthorCluster &a, const AuthorCluster &b) {
              return a.members.front() < b.members.front();
            });
  const std::string prefix = block.front().key.ToString();
  for (size_t i = 0; i < clusters.size(); ++i) {
    clusters[i].cluster_id = fmt::format("{}#{}", prefix, i);
  }
  return clusters;
}

std::vector<AuthorCluster> Disambiguate(std::span<const PublicationRecord> records,
                                        const ScoringConfig &config) {
  config.Validate();
  std::map<NameKey, std::vector<MentionContext>> blocks;
  for (auto &ctx : BuildContexts(records)) blocks[ctx.key].push_back(std::move(ctx));
  std::vector<AuthorCluster> out;
  for (auto &[_, block] : blocks) {
    auto clusters = ClusterBlock(block, config.threshold, config);
    std::move(clusters.begin(), clusters.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end(), [](const AuthorCluster &a, const AuthorCluster &b) {
    return a.cluster_id < b.cluster_id;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Reference validation

std::optional<double> ValidationReport::correct_rate() const {
  if (matched_identities == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(matched_identities);
}

ValidationReport ValidationReport::FromCounts(size_t correct, size_t incorrect) {
  return {correct + incorrect, correct, incorrect};
}

std::vector<ReferenceIdentity> ParseReference(std::istream &in) {
  std::vector<ReferenceIdentity> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc = json::parse(line, nullptr, false);
    auto bad = [&](const std::string &why) {
      return Error(ErrorKind::kParse, fmt::format("reference line {}: {}", line_no, why));
    };
    if (doc.is_discarded() || !doc.is_object()) throw bad("invalid JSON object");
    ReferenceIdentity id;
    if (!doc.contains("identity_id") || !doc["identity_id"].is_string()) {
      throw bad("missing identity_id");
    }
    if (!doc.contains("name") || !doc["name"].is_string()) throw bad("missing name");
    id.identity_id = doc["identity_id"].get<std::string>();
    id.name = doc["name"].get<std::string>();
    if (doc.contains("email") && doc["email"].is_string()) {
      id.email = doc["email"].get<std::string>();
    }
    if (!doc.contains("publications") || !doc["publications"].is_array()) {
      throw bad("missing publications array");
    }
    for (const auto &p : doc["publications"]) {
      if (!p.is_string()) throw bad("publication ids must be strings");
      id.publication_ids.push_back(p.get<std::string>());
    }
    out.push_back(std::move(id));
  }
  return out;
}

std::vector<ReferenceIdentity> LoadReference(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open reference " + path);
  return ParseReference(in);
}

ValidationReport ValidateAgainstReference(
    std::span<const AuthorCluster> clusters,
    std::span<const PublicationRecord> records,
    std::span<const ReferenceIdentity> reference) {
  // Persistent identifiers -> record position. DOIs compare
  // case-insensitively.
  std::unordered_map<std::string, size_t> by_identifier;
  for (size_t i = 0; i < records.size(); ++i) {
    const auto &r = records[i];
    by_identifier.emplace(r.pub_id, i);
    if (r.doi) by_identifier.emplace("doi:" + Lower(*r.doi), i);
    for (const auto &[_, value] : r.external_ids) by_identifier.emplace(value, i);
  }
  const ClusterAssignment assignment = AssignmentOf(clusters);

  ValidationReport report;
  for (const auto &identity : reference) {
    const auto comma = identity.name.find(',');
    const std::string last = identity.name.substr(0, comma);
    const std::string first =
        comma == std::string::npos ? std::string() : identity.name.substr(comma + 1);
    const NameKey key = MakeNameKey(last, first);
    const auto email = NormalizedEmail(identity.email);

    std::set<std::string> touched;
    std::set<size_t> seen_records;
    for (const auto &pid : identity.publication_ids) {
      auto it = by_identifier.find(pid);
      if (it == by_identifier.end()) it = by_identifier.find("doi:" + Lower(pid));
      if (it == by_identifier.end()) continue;
      if (!seen_records.insert(it->second).second) continue;
      const auto &record = records[it->second];

      std::vector<size_t> by_name;
      for (size_t m = 0; m < record.mentions.size(); ++m) {
        if (MakeNameKey(record.mentions[m]) == key) by_name.push_back(m);
      }
      std::optional<size_t> aligned;
      if (by_name.size() == 1) {
        aligned = by_name.front();
      } else if (by_name.size() > 1 && email) {
        std::vector<size_t> by_email;
        for (size_t m : by_name) {
          if (NormalizedEmail(record.mentions[m].email) == email) by_email.push_back(m);
        }
        if (by_email.size() == 1) aligned = by_email.front();
      }
      if (!aligned) continue;
      auto cluster = assignment.find({record.pub_id, *aligned});
      if (cluster != assignment.end()) touched.insert(cluster->second);
    }
    if (touched.empty()) continue;
    ++report.matched_identities;
    if (touched.size() == 1) {
      ++report.correct;
    } else {
      ++report.incorrect;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Evaluation and assignment files

PairwiseQuality EvaluatePairwise(
    std::span<const AuthorCluster> clusters,
    const std::unordered_map<MentionRef, std::string, MentionRefHash> &truth) {
  // Contingency counts: pairs within predicted clusters, within true
  // identities, and within both.
  std::map<std::string, size_t> true_sizes;
  for (const auto &[_, label] : truth) ++true_sizes[label];
  double predicted = 0, truth_pairs = 0, agree = 0;
  for (const auto &c : clusters) {
    predicted += Pairs(c.members.size());
    std::map<std::string, size_t> cell;
    for (const auto &m : c.members) {
      auto it = truth.find(m);
      if (it != truth.end()) ++cell[it->second];
    }
    for (const auto &[_, n] : cell) agree += Pairs(n);
  }
  for (const auto &[_, n] : true_sizes) truth_pairs += Pairs(n);
  PairwiseQuality q;
  q.predicted_pairs = static_cast<size_t>(predicted);
  q.true_pairs = static_cast<size_t>(truth_pairs);
  q.agreeing_pairs = static_cast<size_t>(agree);
  q.precision = predicted > 0 ? agree / predicted : 1.0;
  q.recall = truth_pairs > 0 ? agree / truth_pairs : 1.0;
  return q;
}

ClusterAssignment AssignmentOf(std::span<const AuthorCluster> clusters) {
  ClusterAssignment out;
  for (const auto &c : clusters) {
    for (const auto &m : c.members) out.emplace(m, c.cluster_id);
  }
  return out;
}

void WriteAssignments(std::ostream &out, std::span<const AuthorCluster> clusters) {
  out << "pub_id\tmention_index\tcluster_id\n";
  for (const auto &c : clusters) {
    for (const auto &m : c.members) {
      out << m.pub_id << '\t' << m.index << '\t' << c.cluster_id << '\n';
    }
  }
}

std::vector<AuthorCluster> ReadAssignments(std::istream &in,
                                           std::span<const PublicationRecord> records) {
  std::unordered_map<std::string, const PublicationRecord *> by_id;
  for (const auto &r : records) by_id.emplace(r.pub_id, &r);
  std::map<std::string, AuthorCluster> clusters;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("pub_id\t", 0) == 0) continue;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string pub_id, index_text, cluster_id;
    if (!std::getline(ss, pub_id, '\t') || !std::getline(ss, index_text, '\t') ||
        !std::getline(ss, cluster_id)) {
      throw Error(ErrorKind::kParse, fmt::format("assignment line {}: expected 3 columns", line_no));
    }
    auto rec = by_id.find(pub_id);
    size_t index = 0;
    try {
      index = std::stoul(index_text);
    } catch (const std::logic_error &) {
      throw Error(ErrorKind::kParse, fmt::format("assignment line {}: bad index", line_no));
    }
    if (rec == by_id.end() || index >= rec->second->mentions.size()) {
      throw Error(ErrorKind::kParse,
                  fmt::format("assignment line {}: unknown mention {}/{}", line_no, pub_id, index));
    }
    auto &cluster = clusters[cluster_id];
    cluster.cluster_id = cluster_id;
    cluster.key = MakeNameKey(rec->second->mentions[index]);
    cluster.members.push_back({pub_id, index});
  }
  std::vector<AuthorCluster> out;
  for (auto &[_, c] : clusters) {
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace scimob
