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

#ifndef SCIMOB_CORPUS_H_
#define SCIMOB_CORPUS_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace scimob {

// ISO-3166 alpha-3 country code.
using CountryCode = std::string;
using CountrySet = std::set<CountryCode>;

inline constexpr const char *kMenaRegion = "MENA";

struct AuthorMention {
  std::string last_name;
  std::string first_name;
  std::optional<std::string> email;
  CountrySet countries;
  std::optional<std::string> orcid;

  bool operator==(const AuthorMention &) const = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  std::optional<std::string> doi;
  std::map<std::string, std::string> external_ids;
  std::vector<AuthorMention> mentions;

  // Union of the affiliation countries over all mentions.
  CountrySet Countries() const;

  bool operator==(const PublicationRecord &) const = default;
};

struct StudyWindow {
  int start_year = 2008;
  int end_year = 2017;

  bool Contains(int year) const {
    return start_year <= year && year <= end_year;
  }

  // Parses "2008:2017". Throws Error on bad syntax or start > end.
  static StudyWindow Parse(const std::string &text);
  std::string ToString() const;
};

// Country registry loaded from a tab-delimited data file with columns
// code, name, region, is_mena. Lines starting with '#' are comments.
class CountryRegistry {
 public:
  struct Entry {
    CountryCode code;
    std::string name;
    std::string continent;
    bool is_mena = false;
  };

  CountryRegistry() = default;

  static CountryRegistry Load(const std::string &path);
  static CountryRegistry Parse(std::istream &in);

  bool Contains(const CountryCode &code) const;
  const Entry &Get(const CountryCode &code) const;

  // MENA members map to "MENA"; everyone else to their continent.
  // Throws Error(kUnknownCountry) for codes outside the registry.
  std::string RegionOf(const CountryCode &code) const;
  bool IsMena(const CountryCode &code) const;

  const std::set<CountryCode> &codes() const { return codes_; }
  const std::set<CountryCode> &mena_set() const { return mena_; }
  std::set<std::string> Regions() const;
  size_t size() const { return entries_.size(); }

 private:
  void Add(Entry entry);

  std::map<CountryCode, Entry> entries_;
  std::set<CountryCode> codes_;
  std::set<CountryCode> mena_;
};

std::string RegionOf(const CountryCode &code, const CountryRegistry &registry);

struct ParseOptions {
  // Abort on the first malformed line or unknown country instead of
  // skipping it.
  bool strict = false;
  // Cap on stored diagnostic messages; counts are always exact.
  size_t max_diagnostics = 1000;
};

struct CorpusStats {
  size_t records = 0;
  size_t mentions = 0;
  std::optional<int> min_year;
  std::optional<int> max_year;
  size_t rejected_lines = 0;
  size_t rejected_mentions = 0;
  std::vector<std::string> diagnostics;

  // Combines stats from independently parsed shards.
  void Merge(const CorpusStats &other);
};

struct ParsedCorpus {
  std::vector<PublicationRecord> records;
  CorpusStats stats;
};

// Parses line-delimited JSON publication records. Blank lines are ignored.
// Malformed lines and duplicate pub_ids reject the whole line; mentions
// with unknown country codes are dropped, and a record left without
// mentions is rejected. In strict mode any of these throws Error(kParse)
// or Error(kUnknownCountry) naming the line.
ParsedCorpus ParseCorpus(std::istream &in, const CountryRegistry &registry,
                         const ParseOptions &options = {});
ParsedCorpus ParseCorpusFile(const std::string &path,
                             const CountryRegistry &registry,
                             const ParseOptions &options = {});

// Canonical one-line JSON encoding of a record (fixed key order, sorted
// country sets, optional fields omitted when absent).
std::string SerializeRecord(const PublicationRecord &record);
void WriteCorpus(std::ostream &out, std::span<const PublicationRecord> records);

// pub_id -> record lookup over a record span that outlives the index.
using RecordIndex = std::unordered_map<std::string, const PublicationRecord *>;
RecordIndex IndexRecords(std::span<const PublicationRecord> records);

std::vector<PublicationRecord> FilterWindow(
    std::span<const PublicationRecord> records, const StudyWindow &window);

}  // namespace scimob

#endif  // SCIMOB_CORPUS_H_
