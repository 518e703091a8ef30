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

#include "scimob/pipeline.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "scimob/error.h"
#include "support/planted.h"

namespace scimob {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() /
            (std::string("scimob_pipeline_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string WriteCorpus(const std::string &name, const std::string &text) {
    const auto path = root_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  PipelineConfig Config(const std::string &input, const std::string &out) {
    PipelineConfig c;
    c.inputs = {input};
    c.registry = std::string(SCIMOB_DATA_DIR) + "/registry.tsv";
    c.gender_providers = {"local:" + std::string(SCIMOB_DATA_DIR) + "/gender_table.tsv"};
    c.window = {1990, 2017};
    c.out_dir = (root_ / out).string();
    return c;
  }

  std::string PlantedInput(size_t researchers = 150) {
    testing::PlantedOptions options;
    options.researchers = researchers;
    return WriteCorpus("planted.jsonl", testing::GeneratePlanted(options).ToJsonLines());
  }

  fs::path root_;
};

TEST_F(PipelineTest, EmptyCorpusSucceedsWithEmptyReports) {
  Pipeline pipeline(Config(WriteCorpus("empty.jsonl", ""), "out"));
  const auto manifest = pipeline.Run();
  EXPECT_TRUE(manifest.ok());
  ASSERT_EQ(manifest.stages.size(), 6u);
  for (const auto &s : manifest.stages) EXPECT_EQ(s.status, "ok") << StageName(s.stage);
  const auto bundle = nlohmann::json::parse(Slurp(root_ / "out" / artifacts::kBundle));
  EXPECT_TRUE(bundle["reports"]["shares"]["rows"].empty());
  EXPECT_TRUE(fs::exists(root_ / "out" / "reports" / "shares.csv"));
}

TEST_F(PipelineTest, RerunHitsEveryCache) {
  const auto config = Config(PlantedInput(), "out");
  std::string first_bundle;
  {
    Pipeline pipeline(config);
    const auto m = pipeline.Run();
    ASSERT_TRUE(m.ok()) << m.ToJsonText();
    for (const auto &s : m.stages) EXPECT_FALSE(s.cached);
    first_bundle = Slurp(root_ / "out" / artifacts::kBundle);
  }
  {
    Pipeline pipeline(config);
    const auto m = pipeline.Run();
    for (const auto &s : m.stages) EXPECT_TRUE(s.cached) << StageName(s.stage);
  }
  EXPECT_EQ(Slurp(root_ / "out" / artifacts::kBundle), first_bundle);

  // A changed setting invalidates the affected stage and everything after.
  auto changed = config;
  changed.threshold = 1.5;
  Pipeline pipeline(changed);
  const auto m = pipeline.Run();
  EXPECT_TRUE(m.Find(Stage::kIngest)->cached);
  EXPECT_FALSE(m.Find(Stage::kDisambiguate)->cached);
}

TEST_F(PipelineTest, TamperedOutputIsRecomputed) {
  const auto config = Config(PlantedInput(60), "out");
  { Pipeline(config).Run(); }
  const auto metrics = root_ / "out" / artifacts::kMetrics;
  const std::string original = Slurp(metrics);
  std::ofstream(metrics) << "{}";
  Pipeline pipeline(config);
  const auto m = pipeline.Run();
  EXPECT_FALSE(m.Find(Stage::kMetrics)->cached);
  EXPECT_EQ(Slurp(metrics), original);
}

TEST_F(PipelineTest, MissingUpstreamNamesTheStage) {
  Pipeline pipeline(Config(PlantedInput(20), "out"));
  try {
    pipeline.RunStage(Stage::kMetrics);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingStage);
    EXPECT_NE(std::string(e.what()).find("'network'"), std::string::npos) << e.what();
  }
  try {
    pipeline.RunStage(Stage::kClassify);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("'ingest'"), std::string::npos) << e.what();
  }
}

TEST_F(PipelineTest, StagesInIsolationMatchFullRun) {
  const auto input = PlantedInput(120);
  { Pipeline(Config(input, "full")).Run(); }
  {
    Pipeline staged(Config(input, "staged"));
    for (Stage s : kAllStages) EXPECT_EQ(staged.RunStage(s).status, "ok");
  }
  for (const char *artifact :
       {artifacts::kCorpus, artifacts::kClusters, artifacts::kClassifications,
        artifacts::kDemographics, artifacts::kCollabGraph, artifacts::kMobilityGraph,
        artifacts::kMigrantFlows, artifacts::kMetrics, artifacts::kBundle}) {
    EXPECT_EQ(Slurp(root_ / "full" / artifact), Slurp(root_ / "staged" / artifact)) << artifact;
  }
}

TEST_F(PipelineTest, LockRejectsSecondRun) {
  const auto config = Config(PlantedInput(10), "out");
  {
    Pipeline first(config);
    try {
      Pipeline second(config);
      FAIL() << "expected a lock error";
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::kLocked);
    }
  }
  EXPECT_FALSE(fs::exists(root_ / "out" / artifacts::kLock));
  EXPECT_NO_THROW(Pipeline{config});
}

TEST_F(PipelineTest, FailureSkipsDownstream) {
  auto config = Config(WriteCorpus("bad.jsonl", "{broken\n"), "out");
  config.strict = true;
  Pipeline pipeline(config);
  const auto m = pipeline.Run();
  EXPECT_FALSE(m.ok());
  EXPECT_EQ(m.Find(Stage::kIngest)->status, "failed");
  EXPECT_NE(m.Find(Stage::kIngest)->error.find("line 1"), std::string::npos);
  for (Stage s : {Stage::kDisambiguate, Stage::kClassify, Stage::kNetwork, Stage::kMetrics,
                  Stage::kReport}) {
    EXPECT_EQ(m.Find(s)->status, "skipped");
  }
  const auto saved = RunManifest::FromJsonText(Slurp(root_ / "out" / artifacts::kManifest));
  EXPECT_EQ(saved.status, "failed");
  EXPECT_THROW(pipeline.RunStage(Stage::kIngest), Error);
}

TEST_F(PipelineTest, ExportEdges) {
  Pipeline pipeline(Config(PlantedInput(60), "out"));
  ASSERT_TRUE(pipeline.Run().ok());
  const auto path = (root_ / "edges.tsv").string();
  pipeline.ExportEdges("mobility", path);
  EXPECT_EQ(Slurp(path).rfind("from\tto\tweight\tdirection\n", 0), 0u);
  EXPECT_THROW(pipeline.ExportEdges("citation", path), Error);
}

TEST_F(PipelineTest, FixtureMatchesGoldenDigests) {
  const std::string src = SCIMOB_SOURCE_DIR;
  PipelineConfig config = PipelineConfig::Load(src + "/data/fixtures/config.json");
  for (auto &input : config.inputs) input = src + "/" + input;
  config.registry = src + "/" + config.registry;
  config.reference = src + "/" + config.reference;
  for (auto &p : config.gender_providers) p = "local:" + src + "/" + p.substr(6);
  config.out_dir = (root_ / "fixture").string();
  ASSERT_TRUE(Pipeline(config).Run().ok());

  std::istringstream golden(Slurp(src + "/tests/golden/fixture.sha256"));
  std::string digest, name;
  size_t checked = 0;
  while (golden >> digest >> name) {
    const auto path = root_ / "fixture" / name;
    ASSERT_TRUE(fs::exists(path)) << name;
    EXPECT_EQ(Sha256File(path.string()), digest) << name;
    EXPECT_EQ(Slurp(path).find(root_.string()), std::string::npos) << name;
    EXPECT_EQ(Slurp(path).find(src), std::string::npos) << name;
    ++checked;
  }
  EXPECT_EQ(checked, 23u);
}

TEST(PipelineConfigTest, JsonRoundTripAndValidation) {
  const auto c = PipelineConfig::FromJsonText(
      R"({"inputs": ["a.jsonl"], "registry": "r.tsv", "window": "2009:2015",
          "age_reference": "window-end", "reports": ["shares", "gender"], "top_k": 10})");
  EXPECT_EQ(c.window.start_year, 2009);
  EXPECT_EQ(c.age_reference, AgeReference::kWindowEnd);
  EXPECT_EQ(c.reports, (std::vector<ReportKind>{ReportKind::kShares, ReportKind::kGender}));
  EXPECT_EQ(PipelineConfig::FromJson(c.ToJson()).ToJson(), c.ToJson());
  EXPECT_THROW(PipelineConfig::FromJsonText(R"({"treshold": 2})"), Error);
  EXPECT_THROW(PipelineConfig::FromJsonText(R"({"top_k": "ten"})"), Error);

  PipelineConfig remote = c;
  remote.gender_providers = {"remote:http://localhost:1/gender"};
  EXPECT_THROW(remote.Validate(), Error);
  remote.reproducible = false;
  EXPECT_NO_THROW(remote.Validate());
  remote.gender_providers = {"oracle:x"};
  EXPECT_THROW(remote.Validate(), Error);
}

TEST(RunManifestTest, RoundTrip) {
  RunManifest m;
  m.status = "failed";
  StageRecord r;
  r.stage = Stage::kNetwork;
  r.status = "failed";
  r.key = "abc";
  r.inputs = {{"corpus.jsonl", "00"}};
  r.error = "boom";
  r.diagnostics = {"x"};
  m.stages.push_back(r);
  EXPECT_EQ(RunManifest::FromJsonText(m.ToJsonText()).ToJsonText(), m.ToJsonText());
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace scimob
