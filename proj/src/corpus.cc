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

#include "scimob/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scimob/error.h"
#include "scimob/names.h"

namespace scimob {

using nlohmann::json;
using nlohmann::ordered_json;

CountrySet PublicationRecord::Countries() const {
  CountrySet out;
  for (const auto &m : mentions) out.insert(m.countries.begin(), m.countries.end());
  return out;
}

StudyWindow StudyWindow::Parse(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                "window must look like START:END, got '" + text + "'");
  }
  StudyWindow w;
  try {
    size_t used = 0;
    const std::string start = text.substr(0, colon);
    const std::string end = text.substr(colon + 1);
    w.start_year = std::stoi(start, &used);
    if (used != start.size()) throw std::invalid_argument(start);
    w.end_year = std::stoi(end, &used);
    if (used != end.size()) throw std::invalid_argument(end);
  } catch (const std::logic_error &) {
    throw Error(ErrorKind::kInvalidArgument, "bad window '" + text + "'");
  }
  if (w.start_year > w.end_year) {
    throw Error(ErrorKind::kInvalidArgument,
                "window start after end: '" + text + "'");
  }
  return w;
}

std::string StudyWindow::ToString() const {
  return fmt::format("{}:{}", start_year, end_year);
}

// ---------------------------------------------------------------------------
// CountryRegistry

CountryRegistry CountryRegistry::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open registry " + path);
  return Parse(in);
}

CountryRegistry CountryRegistry::Parse(std::istream &in) {
  CountryRegistry registry;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 4 || cols[0].empty() || cols[2].empty() ||
        (cols[3] != "0" && cols[3] != "1")) {
      throw Error(ErrorKind::kParse,
                  fmt::format("registry line {}: expected code, name, region, "
                              "is_mena (0/1)",
                              line_no));
    }
    if (registry.Contains(cols[0])) {
      throw Error(ErrorKind::kParse,
                  fmt::format("registry line {}: duplicate code {}", line_no,
                              cols[0]));
    }
    registry.Add({cols[0], cols[1], cols[2], cols[3] == "1"});
  }
  return registry;
}

void CountryRegistry::Add(Entry entry) {
  codes_.insert(entry.code);
  if (entry.is_mena) mena_.insert(entry.code);
  entries_.emplace(entry.code, std::move(entry));
}

bool CountryRegistry::Contains(const CountryCode &code) const {
  return entries_.count(code) > 0;
}

const CountryRegistry::Entry &CountryRegistry::Get(
    const CountryCode &code) const {
  auto it = entries_.find(code);
  if (it == entries_.end()) {
    throw Error(ErrorKind::kUnknownCountry,
                "country code not in registry: " + code);
  }
  return it->second;
}

std::string CountryRegistry::RegionOf(const CountryCode &code) const {
  const Entry &e = Get(code);
  return e.is_mena ? std::string(kMenaRegion) : e.continent;
}

bool CountryRegistry::IsMena(const CountryCode &code) const {
  return mena_.count(code) > 0;
}

std::set<std::string> CountryRegistry::Regions() const {
  std::set<std::string> out;
  for (const auto &code : codes_) out.insert(RegionOf(code));
  return out;
}

std::string RegionOf(const CountryCode &code, const CountryRegistry &registry) {
  return registry.RegionOf(code);
}

// ---------------------------------------------------------------------------
// Parsing

void CorpusStats::Merge(const CorpusStats &other) {
  records += other.records;
  mentions += other.mentions;
  rejected_lines += other.rejected_lines;
  rejected_mentions += other.rejected_mentions;
  if (other.min_year && (!min_year || *other.min_year < *min_year)) {
    min_year = other.min_year;
  }
  if (other.max_year && (!max_year || *other.max_year > *max_year)) {
    max_year = other.max_year;
  }
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(),
                     other.diagnostics.end());
}

namespace {

struct LineError {
  std::string message;
};

std::optional<std::string> OptionalString(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw LineError{std::string(key) + " must be a string"};
  return it->get<std::string>();
}

std::string RequiredString(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw LineError{std::string("missing string field ") + key};
  }
  return it->get<std::string>();
}

class CorpusParser {
 public:
  CorpusParser(const CountryRegistry &registry, const ParseOptions &options)
      : registry_(registry), options_(options) {}

  void Line(const std::string &raw, size_t line_no) {
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      return;
    }
    PublicationRecord record;
    try {
      record = Decode(line, line_no);
    } catch (const LineError &e) {
      Reject(line_no, e.message);
      return;
    }
    if (record.mentions.empty()) {
      Reject(line_no, "no valid mentions");
      return;
    }
    if (!seen_ids_.insert(record.pub_id).second) {
      Reject(line_no, "duplicate pub_id " + record.pub_id);
      return;
    }
    auto &stats = result_.stats;
    ++stats.records;
    stats.mentions += record.mentions.size();
    if (!stats.min_year || record.year < *stats.min_year) stats.min_year = record.year;
    if (!stats.max_year || record.year > *stats.max_year) stats.max_year = record.year;
    result_.records.push_back(std::move(record));
  }

  ParsedCorpus Finish() { return std::move(result_); }

 private:
  PublicationRecord Decode(const std::string &line, size_t line_no) {
    json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw LineError{"invalid JSON"};
    if (!doc.is_object()) throw LineError{"record is not a JSON object"};

    PublicationRecord record;
    record.pub_id = RequiredString(doc, "pub_id");
    if (record.pub_id.empty()) throw LineError{"empty pub_id"};
    auto year = doc.find("year");
    if (year == doc.end() || !year->is_number_integer()) {
      throw LineError{"missing integer field year"};
    }
    record.year = year->get<int>();
    if (record.year < 1000 || record.year > 9999) {
      throw LineError{fmt::format("year {} is not a 4-digit year", record.year)};
    }
    record.doi = OptionalString(doc, "doi");
    if (auto ids = doc.find("external_ids"); ids != doc.end() && !ids->is_null()) {
      if (!ids->is_object()) throw LineError{"external_ids must be an object"};
      for (const auto &[scheme, value] : ids->items()) {
        if (!value.is_string()) throw LineError{"external id values must be strings"};
        record.external_ids[scheme] = value.get<std::string>();
      }
    }
    auto mentions = doc.find("mentions");
    if (mentions == doc.end() || !mentions->is_array() || mentions->empty()) {
      throw LineError{"mentions must be a non-empty array"};
    }
    size_t index = 0;
    for (const auto &m : *mentions) {
      if (!m.is_object()) throw LineError{"mention is not an object"};
      AuthorMention mention;
      mention.last_name = RequiredString(m, "last_name");
      mention.first_name = RequiredString(m, "first_name");
      mention.email = OptionalString(m, "email");
      mention.orcid = OptionalString(m, "orcid");
      auto countries = m.find("countries");
      if (countries == m.end() || !countries->is_array()) {
        throw LineError{"mention countries must be an array"};
      }
      std::string problem;
      for (const auto &c : *countries) {
        if (!c.is_string()) throw LineError{"country codes must be strings"};
        std::string code = c.get<std::string>();
        std::transform(code.begin(), code.end(), code.begin(),
                       [](unsigned char ch) { return std::toupper(ch); });
        if (!registry_.Contains(code)) {
          problem = "unknown country code " + code;
          break;
        }
        mention.countries.insert(code);
      }
      if (problem.empty() && mention.countries.empty()) problem = "no countries";
      if (problem.empty() && NormalizeName(mention.last_name).empty()) {
        problem = "empty last name";
      }
      if (!problem.empty()) {
        RejectMention(line_no, index, problem);
      } else {
        record.mentions.push_back(std::move(mention));
      }
      ++index;
    }
    return record;
  }

  void Reject(size_t line_no, const std::string &why) {
    const std::string msg = fmt::format("line {}: {}", line_no, why);
    if (options_.strict) throw Error(ErrorKind::kParse, msg);
    ++result_.stats.rejected_lines;
    Diagnose(msg);
  }

  void RejectMention(size_t line_no, size_t index, const std::string &why) {
    const std::string msg =
        fmt::format("line {}: mention {} rejected: {}", line_no, index, why);
    if (options_.strict) {
      throw Error(why.rfind("unknown country", 0) == 0 ? ErrorKind::kUnknownCountry
                                                       : ErrorKind::kParse,
                  msg);
    }
    ++result_.stats.rejected_mentions;
    Diagnose(msg);
  }

  void Diagnose(std::string msg) {
    if (result_.stats.diagnostics.size() < options_.max_diagnostics) {
      result_.stats.diagnostics.push_back(std::move(msg));
    }
  }

  const CountryRegistry &registry_;
  const ParseOptions &options_;
  std::unordered_set<std::string> seen_ids_;
  ParsedCorpus result_;
};

}  // namespace

ParsedCorpus ParseCorpus(std::istream &in, const CountryRegistry &registry,
                         const ParseOptions &options) {
  CorpusParser parser(registry, options);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) parser.Line(line, ++line_no);
  return parser.Finish();
}

ParsedCorpus ParseCorpusFile(const std::string &path,
                             const CountryRegistry &registry,
                             const ParseOptions &options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus " + path);
  return ParseCorpus(in, registry, options);
}

std::string SerializeRecord(const PublicationRecord &record) {
  ordered_json doc;
  doc["pub_id"] = record.pub_id;
  doc["year"] = record.year;
  if (record.doi) doc["doi"] = *record.doi;
  if (!record.external_ids.empty()) {
    ordered_json ids = ordered_json::object();
    for (const auto &[k, v] : record.external_ids) ids[k] = v;
    doc["external_ids"] = ids;
  }
  ordered_json mentions = ordered_json::array();
  for (const auto &m : record.mentions) {
    ordered_json jm;
    jm["last_name"] = m.last_name;
    jm["first_name"] = m.first_name;
    if (m.email) jm["email"] = *m.email;
    jm["countries"] = std::vector<std::string>(m.countries.begin(), m.countries.end());
    if (m.orcid) jm["orcid"] = *m.orcid;
    mentions.push_back(std::move(jm));
  }
  doc["mentions"] = std::move(mentions);
  return doc.dump();
}

void WriteCorpus(std::ostream &out, std::span<const PublicationRecord> records) {
  for (const auto &r : records) out << SerializeRecord(r) << '\n';
}

RecordIndex IndexRecords(std::span<const PublicationRecord> records) {
  RecordIndex index;
  for (const auto &r : records) index.emplace(r.pub_id, &r);
  return index;
}

std::vector<PublicationRecord> FilterWindow(
    std::span<const PublicationRecord> records, const StudyWindow &window) {
  std::vector<PublicationRecord> out;
  for (const auto &r : records) {
    if (window.Contains(r.year)) out.push_back(r);
  }
  return out;
}

}  // namespace scimob
