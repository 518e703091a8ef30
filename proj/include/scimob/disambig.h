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

#ifndef SCIMOB_DISAMBIG_H_
#define SCIMOB_DISAMBIG_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "scimob/corpus.h"

namespace scimob {

// Blocking key: folded last name plus first forename initial.
struct NameKey {
  std::string last;
  char initial = '\0';

  auto operator<=>(const NameKey &) const = default;
  bool operator==(const NameKey &) const = default;

  // "elouahi_j"; a missing initial prints as '?'.
  std::string ToString() const;
};

NameKey MakeNameKey(const AuthorMention &mention);
NameKey MakeNameKey(std::string_view last_name, std::string_view first_name);

// Position of one author mention inside the corpus.
struct MentionRef {
  std::string pub_id;
  size_t index = 0;

  auto operator<=>(const MentionRef &) const = default;
  bool operator==(const MentionRef &) const = default;
};

struct MentionRefHash {
  size_t operator()(const MentionRef &r) const {
    return std::hash<std::string>()(r.pub_id) * 31 + r.index;
  }
};

// Everything the pairwise scorer may look at for one mention.
struct MentionContext {
  MentionRef ref;
  NameKey key;
  std::optional<std::string> email;  // lowercased
  std::string full_forename;         // empty when only initials are known
  int year = 0;
  CountrySet countries;
  std::set<NameKey> coauthors;
  // Optional co-citation evidence; the line-delimited interchange format
  // carries none, so this stays empty unless a caller fills it.
  std::set<std::string> cited_works;
};

std::vector<MentionContext> BuildContexts(std::span<const PublicationRecord> records);

using Blocks = std::map<NameKey, std::vector<MentionRef>>;

// Every mention lands in exactly one block.
Blocks BlockMentions(std::span<const PublicationRecord> records);

struct PairFeatures {
  double email = 0;             // 1 when both e-mails exist and agree
  double shared_coauthors = 0;  // number of co-author keys in common
  double country_year = 0;      // 1 when same year and a shared country
  double first_name = 0;        // 1 when full forenames agree
  double cocitation = 0;        // 1 when cited-work sets intersect
};

// Non-negative weights; the score is their dot product with PairFeatures.
struct ScoringConfig {
  double email = 1.0;
  double shared_coauthor = 0.6;
  double country_year = 0.2;
  double first_name = 0.4;
  double cocitation = 0.0;  // needs cited_works, which the corpus format lacks
  double threshold = 1.0;

  // Reads a JSON object with any subset of the keys above. Throws Error on
  // negative weights or a non-positive threshold.
  static ScoringConfig Load(const std::string &path);
  static ScoringConfig FromJsonText(const std::string &text);
  std::string ToJsonText() const;
  void Validate() const;
};

PairFeatures ExtractFeatures(const MentionContext &a, const MentionContext &b);
double Score(const PairFeatures &f, const ScoringConfig &config);
double ScorePair(const MentionContext &a, const MentionContext &b,
                 const ScoringConfig &config);

struct AuthorCluster {
  std::string cluster_id;
  NameKey key;
  std::vector<MentionRef> members;  // sorted
};

// Single-linkage over the pairs scoring at or above `threshold`. Clusters
// come back ordered by their smallest member and are named
// "<key>#<ordinal>", so ids do not depend on input order.
std::vector<AuthorCluster> ClusterBlock(std::span<const MentionContext> block,
                                        double threshold,
                                        const ScoringConfig &config);

// Blocks and clusters a whole corpus. Output ordered by cluster id.
std::vector<AuthorCluster> Disambiguate(std::span<const PublicationRecord> records,
                                        const ScoringConfig &config);

// A reference identity (e.g. from an ORCID dump).
struct ReferenceIdentity {
  std::string identity_id;
  std::string name;  // "Last, First"
  std::optional<std::string> email;
  std::vector<std::string> publication_ids;
};

// Line-delimited JSON: {"identity_id", "name", "email"?, "publications": []}.
std::vector<ReferenceIdentity> LoadReference(const std::string &path);
std::vector<ReferenceIdentity> ParseReference(std::istream &in);

struct ValidationReport {
  size_t matched_identities = 0;
  size_t correct = 0;
  size_t incorrect = 0;

  // Undefined when nothing matched.
  std::optional<double> correct_rate() const;
  static ValidationReport FromCounts(size_t correct, size_t incorrect);
};

// Joins reference publications to records by DOI, external id value or
// pub_id; aligns mentions by NameKey, using e-mail to pick among several
// same-key mentions on one record (ambiguous records are skipped); an
// identity is correct when all aligned mentions share one cluster.
ValidationReport ValidateAgainstReference(
    std::span<const AuthorCluster> clusters,
    std::span<const PublicationRecord> records,
    std::span<const ReferenceIdentity> reference);

// Pairwise precision/recall of a clustering against ground-truth labels.
struct PairwiseQuality {
  double precision = 1.0;
  double recall = 1.0;
  size_t predicted_pairs = 0;
  size_t true_pairs = 0;
  size_t agreeing_pairs = 0;
};

PairwiseQuality EvaluatePairwise(
    std::span<const AuthorCluster> clusters,
    const std::unordered_map<MentionRef, std::string, MentionRefHash> &truth);

// (pub_id, mention_index) -> cluster_id lookup.
using ClusterAssignment = std::unordered_map<MentionRef, std::string, MentionRefHash>;
ClusterAssignment AssignmentOf(std::span<const AuthorCluster> clusters);

// Tab-separated assignment file: pub_id, mention_index, cluster_id.
void WriteAssignments(std::ostream &out, std::span<const AuthorCluster> clusters);
std::vector<AuthorCluster> ReadAssignments(std::istream &in,
                                           std::span<const PublicationRecord> records);

}  // namespace scimob

#endif  // SCIMOB_DISAMBIG_H_
