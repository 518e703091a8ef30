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

#ifndef SCIMOB_PIPELINE_H_
#define SCIMOB_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scimob/corpus.h"
#include "scimob/demography.h"
#include "scimob/report.h"

namespace scimob {

// Pipeline settings. Serialized as one JSON object; keys are the field
// names below. Unknown keys are rejected.
struct PipelineConfig {
  std::vector<std::string> inputs;
  std::string registry;
  StudyWindow window;
  bool strict = false;

  double threshold = 1.0;
  std::string weights;    // JSON weights file; empty for the defaults
  std::string reference;  // reference identities; empty to skip validation

  // "local:<path>" or "remote:<url>", in priority order.
  std::vector<std::string> gender_providers;
  std::string remote_api_key_env = "SCIMOB_GENDER_API_KEY";
  double min_confidence = 0.90;
  AgeReference age_reference = AgeReference::kEvent;

  size_t min_country_count = 30;
  size_t top_k = 15;
  size_t alluvial_min_mobile = 1000;
  std::vector<ReportKind> reports{std::begin(kAllReports), std::end(kAllReports)};

  std::string out_dir = "out";
  // Only local gender tables; remote providers are refused.
  bool reproducible = true;

  static PipelineConfig FromJson(const nlohmann::json &doc);
  static PipelineConfig FromJsonText(const std::string &text);
  static PipelineConfig Load(const std::string &path);
  nlohmann::ordered_json ToJson() const;
  // Throws Error(kInvalidArgument) on inconsistent settings.
  void Validate() const;

  ReportSettings report_settings() const;
};

enum class Stage { kIngest, kDisambiguate, kClassify, kNetwork, kMetrics, kReport };

inline constexpr Stage kAllStages[] = {Stage::kIngest,  Stage::kDisambiguate, Stage::kClassify,
                                       Stage::kNetwork, Stage::kMetrics,      Stage::kReport};

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);

// Artifact file names, relative to the output directory.
namespace artifacts {
inline constexpr const char *kCorpus = "corpus.jsonl";
inline constexpr const char *kIngestStats = "ingest_stats.json";
inline constexpr const char *kClusters = "clusters.tsv";
inline constexpr const char *kValidation = "validation.json";
inline constexpr const char *kClassifications = "classifications.jsonl";
inline constexpr const char *kDemographics = "demographics.tsv";
inline constexpr const char *kCountryMobility = "country_mobility.tsv";
inline constexpr const char *kCollabGraph = "collab_graph.json";
inline constexpr const char *kMobilityGraph = "mobility_graph.json";
inline constexpr const char *kMigrantFlows = "migrant_flows.json";
inline constexpr const char *kCollabEdges = "collab_edges.tsv";
inline constexpr const char *kMobilityEdges = "mobility_edges.tsv";
inline constexpr const char *kMetrics = "metrics.json";
inline constexpr const char *kReportDir = "reports";
inline constexpr const char *kBundle = "reports/bundle.json";
inline constexpr const char *kManifest = "manifest.json";
inline constexpr const char *kLock = ".lock";
}  // namespace artifacts

// Hex SHA-256 of a file's bytes or of a string.
std::string Sha256File(const std::string &path);
std::string Sha256Hex(std::string_view data);

struct StageRecord {
  Stage stage = Stage::kIngest;
  std::string status;  // "ok", "failed", "skipped"
  bool cached = false;
  double seconds = 0;
  std::string key;  // digest of the stage's inputs and settings
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // relative path, sha256
  std::string error;
  std::vector<std::string> diagnostics;
};

struct RunManifest {
  nlohmann::ordered_json config;
  std::vector<StageRecord> stages;
  std::string status = "ok";

  const StageRecord *Find(Stage stage) const;
  bool ok() const { return status == "ok"; }
  std::string ToJsonText() const;
  static RunManifest FromJsonText(const std::string &text);
};

// Runs stages against one output directory, holding its lock file for the
// object's lifetime. Throws Error(kLocked) when another run holds it.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);
  ~Pipeline();
  Pipeline(const Pipeline &) = delete;
  Pipeline &operator=(const Pipeline &) = delete;

  // Every stage in order. A failing stage is recorded and ends the run;
  // later stages are marked skipped. Never throws for stage failures.
  RunManifest Run();

  // One stage in isolation. Throws Error(kMissingStage) naming the
  // upstream stage whose artifacts are absent, or Error(kStageFailed).
  StageRecord RunStage(Stage stage);

  // Writes the given graph's edge list ("collab" or "mobility") to `path`.
  void ExportEdges(const std::string &network, const std::string &path) const;

  const PipelineConfig &config() const { return config_; }
  const RunManifest &manifest() const { return manifest_; }

 private:
  StageRecord Execute(Stage stage);
  void RequireUpstream(Stage stage) const;
  std::string Path(const std::string &relative) const;
  void SaveManifest() const;

  PipelineConfig config_;
  RunManifest manifest_;
  std::string lock_path_;
};

}  // namespace scimob

#endif  // SCIMOB_PIPELINE_H_
