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

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "scimob/error.h"
#include "support/planted.h"

namespace scimob {
namespace {

const CountryRegistry &Registry() {
  static const CountryRegistry registry =
      CountryRegistry::Load(std::string(SCIMOB_DATA_DIR) + "/registry.tsv");
  return registry;
}

ParsedCorpus ParseText(const std::string &text, bool strict = false) {
  std::istringstream in(text);
  ParseOptions options;
  options.strict = strict;
  return ParseCorpus(in, Registry(), options);
}

TEST(RegistryTest, BundledRegistryShape) {
  const auto &r = Registry();
  EXPECT_EQ(r.size(), 250u);
  EXPECT_EQ(r.mena_set().size(), 22u);
  for (const char *c : {"AFG", "PAK", "TUR", "EGY", "SAU", "IRN", "MAR", "PSE"}) {
    EXPECT_TRUE(r.IsMena(c)) << c;
  }
  EXPECT_FALSE(r.IsMena("FRA"));
  EXPECT_EQ(r.Get("TUR").name, "Turkey");
}

TEST(RegistryTest, RegionOf) {
  EXPECT_EQ(RegionOf("EGY", Registry()), "MENA");
  EXPECT_EQ(RegionOf("TUR", Registry()), "MENA");
  EXPECT_EQ(RegionOf("FRA", Registry()), "Europe");
  EXPECT_EQ(RegionOf("USA", Registry()), "North America");
  EXPECT_EQ(RegionOf("BRA", Registry()), "South America");
  EXPECT_EQ(RegionOf("CHN", Registry()), "Asia");
  EXPECT_EQ(RegionOf("NGA", Registry()), "Africa");
  EXPECT_EQ(RegionOf("AUS", Registry()), "Oceania");
  try {
    RegionOf("XYZ", Registry());
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownCountry);
  }
}

TEST(RegistryTest, ParseRejectsBadRows) {
  std::istringstream bad("# code\tname\tregion\tis_mena\nEGY\tEgypt\tAfrica\n");
  EXPECT_THROW(CountryRegistry::Parse(bad), Error);
  std::istringstream dup("EGY\tEgypt\tAfrica\t1\nEGY\tEgypt\tAfrica\t1\n");
  EXPECT_THROW(CountryRegistry::Parse(dup), Error);
}

TEST(StudyWindowTest, ParseAndContains) {
  const auto w = StudyWindow::Parse("2008:2017");
  EXPECT_EQ(w.start_year, 2008);
  EXPECT_EQ(w.end_year, 2017);
  EXPECT_EQ(w.ToString(), "2008:2017");
  EXPECT_TRUE(w.Contains(2008));
  EXPECT_TRUE(w.Contains(2017));
  EXPECT_FALSE(w.Contains(2007));
  EXPECT_FALSE(w.Contains(2018));
  EXPECT_THROW(StudyWindow::Parse("2017:2008"), Error);
  EXPECT_THROW(StudyWindow::Parse("2008-2017"), Error);
  EXPECT_THROW(StudyWindow::Parse("abc:2017"), Error);
}

TEST(FilterWindowTest, AgreesWithLinearScan) {
  std::mt19937 rng(5);
  std::vector<PublicationRecord> records;
  for (int i = 0; i < 500; ++i) {
    PublicationRecord r;
    r.pub_id = "p" + std::to_string(i);
    r.year = 1995 + static_cast<int>(rng() % 30);
    records.push_back(r);
  }
  const StudyWindow w{2008, 2017};
  const auto kept = FilterWindow(records, w);
  size_t expected = 0;
  for (const auto &r : records) expected += (r.year >= 2008 && r.year <= 2017) ? 1 : 0;
  ASSERT_EQ(kept.size(), expected);
  for (const auto &r : kept) {
    EXPECT_GE(r.year, 2008);
    EXPECT_LE(r.year, 2017);
  }
}

TEST(ParseCorpusTest, ValidRecord) {
  const auto parsed = ParseText(
      R"({"pub_id":"p1","year":2010,"doi":"10.1/x","external_ids":{"wos":"W1"},)"
      R"("mentions":[{"last_name":"El-Ouahi","first_name":"Jamal","email":"j@x.org",)"
      R"("countries":["mar","FRA"],"orcid":"0000-0001"}]})"
      "\n\n   \n");
  ASSERT_EQ(parsed.records.size(), 1u);
  const auto &r = parsed.records[0];
  EXPECT_EQ(r.pub_id, "p1");
  EXPECT_EQ(r.year, 2010);
  EXPECT_EQ(r.doi, "10.1/x");
  EXPECT_EQ(r.external_ids.at("wos"), "W1");
  EXPECT_EQ(r.mentions[0].countries, (CountrySet{"FRA", "MAR"}));
  EXPECT_EQ(r.Countries(), (CountrySet{"FRA", "MAR"}));
  EXPECT_EQ(parsed.stats.records, 1u);
  EXPECT_EQ(parsed.stats.mentions, 1u);
  EXPECT_EQ(parsed.stats.rejected_lines, 0u);
  EXPECT_EQ(parsed.stats.min_year, 2010);
}

TEST(ParseCorpusTest, RejectsMentionsAndLines) {
  const auto parsed = ParseText(
      R"({"pub_id":"p1","year":2010,"mentions":[{"last_name":"A","first_name":"B","countries":["XXX"]},)"
      R"({"last_name":"C","first_name":"D","countries":["EGY"]}]})"
      "\n"
      R"({"pub_id":"p1","year":2011,"mentions":[{"last_name":"A","first_name":"B","countries":["EGY"]}]})"
      "\n"
      R"({"pub_id":"p2","year":2011,"mentions":[{"last_name":"A","first_name":"B","countries":[]}]})"
      "\n");
  EXPECT_EQ(parsed.records.size(), 1u);
  EXPECT_EQ(parsed.records[0].mentions.size(), 1u);
  EXPECT_EQ(parsed.stats.rejected_mentions, 2u);
  EXPECT_EQ(parsed.stats.rejected_lines, 2u);  // duplicate id, no valid mentions
  EXPECT_EQ(parsed.stats.diagnostics.size(), 4u);
}

TEST(ParseCorpusTest, StrictModeThrows) {
  EXPECT_THROW(ParseText("{not json}\n", true), Error);
  try {
    ParseText(R"({"pub_id":"p","year":2010,"mentions":[{"last_name":"A","first_name":"B","countries":["QQQ"]}]})",
              true);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownCountry);
  }
}

TEST(ParseCorpusTest, GeneratedCorruptionsAreCounted) {
  const auto corrupted = testing::GenerateCorrupted(11, 100, {7, 42, 93});
  const auto parsed = ParseText(corrupted.text);
  EXPECT_EQ(corrupted.valid_records, 97u);
  EXPECT_EQ(parsed.records.size(), 97u);
  EXPECT_EQ(parsed.stats.rejected_lines, 3u);
  ASSERT_EQ(parsed.stats.diagnostics.size(), 3u);
  EXPECT_EQ(parsed.stats.diagnostics[0].rfind("line 8:", 0), 0u);
  EXPECT_EQ(parsed.stats.diagnostics[1].rfind("line 43:", 0), 0u);
  EXPECT_EQ(parsed.stats.diagnostics[2].rfind("line 94:", 0), 0u);
}

TEST(ParseCorpusTest, StatsMergeOverShards) {
  const auto corrupted = testing::GenerateCorrupted(3, 60, {1, 2});
  std::istringstream all(corrupted.text);
  const auto whole = ParseCorpus(all, Registry());
  std::string first, second;
  std::istringstream lines(corrupted.text);
  std::string line;
  for (int i = 0; std::getline(lines, line); ++i) (i < 30 ? first : second) += line + "\n";
  CorpusStats merged = ParseText(first).stats;
  merged.Merge(ParseText(second).stats);
  EXPECT_EQ(merged.records, whole.stats.records);
  EXPECT_EQ(merged.mentions, whole.stats.mentions);
  EXPECT_EQ(merged.rejected_lines, whole.stats.rejected_lines);
  EXPECT_EQ(merged.min_year, whole.stats.min_year);
  EXPECT_EQ(merged.max_year, whole.stats.max_year);
}

TEST(SerializeRecordTest, RoundTrips) {
  const auto planted = testing::GeneratePlanted({.researchers = 40});
  std::ostringstream out;
  WriteCorpus(out, planted.records);
  const auto parsed = ParseText(out.str(), true);
  ASSERT_EQ(parsed.records.size(), planted.records.size());
  for (size_t i = 0; i < parsed.records.size(); ++i) {
    EXPECT_EQ(SerializeRecord(parsed.records[i]), SerializeRecord(planted.records[i]));
  }
}

}  // namespace
}  // namespace scimob
