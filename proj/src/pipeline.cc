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

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "scimob/disambig.h"
#include "scimob/error.h"
#include "scimob/indicators.h"
#include "scimob/mobility.h"
#include "scimob/netmetrics.h"

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace scimob {

namespace {

constexpr size_t kMaxStageDiagnostics = 50;

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string &path, const std::string &content) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path);
}

template <typename T>
T Get(const json &doc, const std::string &key) {
  try {
    return doc.get<T>();
  } catch (const json::exception &) {
    throw Error(ErrorKind::kInvalidArgument, "config key '" + key + "' has the wrong type");
  }
}

std::vector<std::string> StringList(const json &value, const std::string &key) {
  if (value.is_string()) return {value.get<std::string>()};
  return Get<std::vector<std::string>>(value, key);
}

void AddDiagnostics(StageRecord &record, const std::vector<std::string> &diagnostics) {
  for (const auto &d : diagnostics) {
    if (record.diagnostics.size() == kMaxStageDiagnostics) {
      record.diagnostics.push_back(fmt::format("... {} diagnostics in total", diagnostics.size()));
      return;
    }
    record.diagnostics.push_back(d);
  }
}

std::vector<MobilityClassification> ReadClassifications(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::vector<MobilityClassification> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(ParseClassification(line));
  }
  return out;
}

CountryGraph ReadGraph(const std::string &path) {
  return CountryGraph::FromJsonText(ReadFile(path));
}

ordered_json OptionalNumber(const std::optional<double> &v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json GraphMetrics(const CountryGraph &g) {
  const StructuralMeasures m = ComputeStructuralMeasures(g);
  ordered_json doc;
  doc["vertices"] = m.vertex_count;
  doc["edges"] = m.edge_count;
  doc["density"] = OptionalNumber(m.density);
  doc["average_degree"] = m.average_degree;
  doc["diameter"] = m.diameter.value ? ordered_json(*m.diameter.value) : ordered_json(nullptr);
  doc["disconnected"] = m.diameter.disconnected;
  doc["clustering_coefficient"] = m.clustering_coefficient;
  doc["assortativity"] = OptionalNumber(m.assortativity);
  ordered_json countries = ordered_json::object();
  for (const auto &c : g.nodes()) {
    const ClosenessResult closeness = ClosenessCentrality(g, c);
    countries[c] = {{"degree", DegreeCentrality(g, c)},
                    {"closeness", closeness.value},
                    {"isolated", closeness.isolated}};
  }
  doc["countries"] = countries;
  return doc;
}

// Exclusive-create lock file; removed by the destructor of the owner.
std::string AcquireLock(const std::string &dir) {
  const std::string path = (fs::path(dir) / artifacts::kLock).string();
  const int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw Error(ErrorKind::kLocked, "output directory is in use (remove " + path +
                                          " if no run is active)");
    }
    throw Error(ErrorKind::kIo, "cannot create lock file " + path);
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] auto written = ::write(fd, pid.data(), pid.size());
  ::close(fd);
  return path;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

PipelineConfig PipelineConfig::FromJson(const json &doc) {
  if (!doc.is_object()) throw Error(ErrorKind::kInvalidArgument, "config must be a JSON object");
  PipelineConfig c;
  for (const auto &[key, value] : doc.items()) {
    if (key == "inputs") {
      c.inputs = StringList(value, key);
    } else if (key == "registry") {
      c.registry = Get<std::string>(value, key);
    } else if (key == "window") {
      c.window = StudyWindow::Parse(Get<std::string>(value, key));
    } else if (key == "strict") {
      c.strict = Get<bool>(value, key);
    } else if (key == "threshold") {
      c.threshold = Get<double>(value, key);
    } else if (key == "weights") {
      c.weights = Get<std::string>(value, key);
    } else if (key == "reference") {
      c.reference = Get<std::string>(value, key);
    } else if (key == "gender_providers") {
      c.gender_providers = StringList(value, key);
    } else if (key == "remote_api_key_env") {
      c.remote_api_key_env = Get<std::string>(value, key);
    } else if (key == "min_confidence") {
      c.min_confidence = Get<double>(value, key);
    } else if (key == "age_reference") {
      c.age_reference = ParseAgeReference(Get<std::string>(value, key));
    } else if (key == "min_country_count") {
      c.min_country_count = Get<size_t>(value, key);
    } else if (key == "top_k") {
      c.top_k = Get<size_t>(value, key);
    } else if (key == "alluvial_min_mobile") {
      c.alluvial_min_mobile = Get<size_t>(value, key);
    } else if (key == "reports") {
      c.reports.clear();
      std::string joined;
      for (const auto &name : StringList(value, key)) joined += (joined.empty() ? "" : ",") + name;
      c.reports = ParseReportSelection(joined);
    } else if (key == "out_dir") {
      c.out_dir = Get<std::string>(value, key);
    } else if (key == "reproducible") {
      c.reproducible = Get<bool>(value, key);
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown config key: " + key);
    }
  }
  return c;
}

PipelineConfig PipelineConfig::FromJsonText(const std::string &text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorKind::kParse, "config is not valid JSON");
  return FromJson(doc);
}

PipelineConfig PipelineConfig::Load(const std::string &path) {
  return FromJsonText(ReadFile(path));
}

ordered_json PipelineConfig::ToJson() const {
  ordered_json doc;
  doc["inputs"] = inputs;
  doc["registry"] = registry;
  doc["window"] = window.ToString();
  doc["strict"] = strict;
  doc["threshold"] = threshold;
  doc["weights"] = weights;
  doc["reference"] = reference;
  doc["gender_providers"] = gender_providers;
  doc["remote_api_key_env"] = remote_api_key_env;
  doc["min_confidence"] = min_confidence;
  doc["age_reference"] = AgeReferenceName(age_reference);
  doc["min_country_count"] = min_country_count;
  doc["top_k"] = top_k;
  doc["alluvial_min_mobile"] = alluvial_min_mobile;
  std::vector<std::string> names;
  for (ReportKind k : reports) names.emplace_back(ReportKindName(k));
  doc["reports"] = names;
  doc["out_dir"] = out_dir;
  doc["reproducible"] = reproducible;
  return doc;
}

void PipelineConfig::Validate() const {
  auto fail = [](const std::string &msg) { throw Error(ErrorKind::kInvalidArgument, msg); };
  if (registry.empty()) fail("no registry given");
  if (out_dir.empty()) fail("no output directory given");
  if (!(threshold > 0)) fail("threshold must be positive");
  if (min_confidence < 0 || min_confidence > 1) fail("min_confidence must be within [0, 1]");
  if (top_k == 0) fail("top_k must be positive");
  for (const auto &p : gender_providers) {
    if (p.rfind("local:", 0) == 0) continue;
    if (p.rfind("remote:", 0) == 0) {
      if (reproducible) fail("remote gender provider refused in reproducibility mode: " + p);
      continue;
    }
    fail("gender provider must start with local: or remote: (" + p + ")");
  }
}

ReportSettings PipelineConfig::report_settings() const {
  ReportSettings s;
  s.window = window;
  s.threshold = threshold;
  s.age_reference = age_reference;
  s.min_confidence = min_confidence;
  s.min_country_count = min_country_count;
  s.top_k = top_k;
  s.alluvial_min_mobile = alluvial_min_mobile;
  return s;
}

// ---------------------------------------------------------------------------
// Stages and digests

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kDisambiguate: return "disambiguate";
    case Stage::kClassify: return "classify";
    case Stage::kNetwork: return "network";
    case Stage::kMetrics: return "metrics";
    case Stage::kReport: return "report";
  }
  return "?";
}

Stage ParseStage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (StageName(s) == name) return s;
  }
  throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown stage: {}", name));
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr)) {
    throw Error(ErrorKind::kIo, "SHA-256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string Sha256File(const std::string &path) { return Sha256Hex(ReadFile(path)); }

// ---------------------------------------------------------------------------
// Manifest

const StageRecord *RunManifest::Find(Stage stage) const {
  for (const auto &s : stages) {
    if (s.stage == stage) return &s;
  }
  return nullptr;
}

std::string RunManifest::ToJsonText() const {
  ordered_json doc;
  doc["status"] = status;
  doc["config"] = config;
  doc["stages"] = ordered_json::array();
  for (const auto &s : stages) {
    ordered_json stage;
    stage["stage"] = StageName(s.stage);
    stage["status"] = s.status;
    stage["cached"] = s.cached;
    stage["seconds"] = s.seconds;
    stage["key"] = s.key;
    stage["inputs"] = ordered_json::object();
    for (const auto &[path, digest] : s.inputs) stage["inputs"][path] = digest;
    stage["outputs"] = ordered_json::object();
    for (const auto &[path, digest] : s.outputs) stage["outputs"][path] = digest;
    if (!s.error.empty()) stage["error"] = s.error;
    stage["diagnostics"] = s.diagnostics;
    doc["stages"].push_back(stage);
  }
  return doc.dump(2) + "\n";
}

RunManifest RunManifest::FromJsonText(const std::string &text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::kParse, "manifest is not a JSON object");
  }
  RunManifest m;
  try {
    m.status = doc.at("status").get<std::string>();
    m.config = doc.at("config");
    for (const auto &s : doc.at("stages")) {
      StageRecord r;
      r.stage = ParseStage(s.at("stage").get<std::string>());
      r.status = s.at("status").get<std::string>();
      r.cached = s.at("cached").get<bool>();
      r.seconds = s.at("seconds").get<double>();
      r.key = s.at("key").get<std::string>();
      for (const auto &[path, digest] : s.at("inputs").items()) {
        r.inputs.emplace_back(path, digest.get<std::string>());
      }
      for (const auto &[path, digest] : s.at("outputs").items()) {
        r.outputs.emplace_back(path, digest.get<std::string>());
      }
      if (s.contains("error")) r.error = s.at("error").get<std::string>();
      r.diagnostics = s.at("diagnostics").get<std::vector<std::string>>();
      m.stages.push_back(std::move(r));
    }
  } catch (const ordered_json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

struct StagePlan {
  std::vector<std::string> internal_inputs;  // relative to the output directory
  std::vector<std::string> external_inputs;  // user files
  ordered_json settings;
};

struct Upstream {
  const char *artifact;
  Stage producer;
};

std::vector<Upstream> UpstreamOf(Stage stage) {
  using namespace artifacts;
  switch (stage) {
    case Stage::kIngest: return {};
    case Stage::kDisambiguate: return {{kCorpus, Stage::kIngest}};
    case Stage::kClassify:
      return {{kCorpus, Stage::kIngest}, {kClusters, Stage::kDisambiguate}};
    case Stage::kNetwork:
      return {{kCorpus, Stage::kIngest}, {kClassifications, Stage::kClassify}};
    case Stage::kMetrics:
      return {{kCollabGraph, Stage::kNetwork}, {kMobilityGraph, Stage::kNetwork}};
    case Stage::kReport:
      return {{kCorpus, Stage::kIngest},           {kClusters, Stage::kDisambiguate},
              {kClassifications, Stage::kClassify}, {kDemographics, Stage::kClassify},
              {kCollabGraph, Stage::kNetwork},      {kMobilityGraph, Stage::kNetwork}};
  }
  return {};
}

StagePlan PlanOf(Stage stage, const PipelineConfig &c) {
  StagePlan plan;
  for (const auto &u : UpstreamOf(stage)) plan.internal_inputs.push_back(u.artifact);
  switch (stage) {
    case Stage::kIngest:
      plan.external_inputs = c.inputs;
      plan.external_inputs.push_back(c.registry);
      plan.settings = {{"window", c.window.ToString()}, {"strict", c.strict}};
      break;
    case Stage::kDisambiguate:
      if (!c.weights.empty()) plan.external_inputs.push_back(c.weights);
      if (!c.reference.empty()) plan.external_inputs.push_back(c.reference);
      plan.settings = {{"threshold", c.threshold},
                       {"weights", !c.weights.empty()},
                       {"reference", !c.reference.empty()}};
      break;
    case Stage::kClassify: {
      plan.external_inputs.push_back(c.registry);
      std::vector<std::string> providers;
      for (const auto &p : c.gender_providers) {
        if (p.rfind("local:", 0) == 0) {
          plan.external_inputs.push_back(p.substr(6));
          providers.push_back("local");
        } else {
          providers.push_back(p);
        }
      }
      plan.settings = {{"window", c.window.ToString()},
                       {"providers", providers},
                       {"min_confidence", c.min_confidence},
                       {"age_reference", AgeReferenceName(c.age_reference)},
                       {"min_country_count", c.min_country_count}};
      break;
    }
    case Stage::kNetwork:
    case Stage::kMetrics:
      plan.settings = ordered_json::object();
      break;
    case Stage::kReport:
      plan.external_inputs.push_back(c.registry);
      plan.settings = c.ToJson();
      plan.settings.erase("inputs");
      plan.settings.erase("out_dir");
      plan.settings.erase("gender_providers");
      break;
  }
  return plan;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.Validate();
  fs::create_directories(config_.out_dir);
  lock_path_ = AcquireLock(config_.out_dir);
  const std::string manifest_path = Path(artifacts::kManifest);
  if (fs::exists(manifest_path)) {
    try {
      manifest_ = RunManifest::FromJsonText(ReadFile(manifest_path));
    } catch (const Error &) {
      manifest_ = RunManifest{};
    }
  }
  manifest_.config = config_.ToJson();
}

Pipeline::~Pipeline() {
  std::error_code ec;
  fs::remove(lock_path_, ec);
}

std::string Pipeline::Path(const std::string &relative) const {
  return (fs::path(config_.out_dir) / relative).string();
}

void Pipeline::SaveManifest() const {
  WriteFile(Path(artifacts::kManifest), manifest_.ToJsonText());
}

void Pipeline::RequireUpstream(Stage stage) const {
  for (const auto &u : UpstreamOf(stage)) {
    if (!fs::exists(Path(u.artifact))) {
      throw Error(ErrorKind::kMissingStage,
                  fmt::format("stage '{}' requires the output of stage '{}' (missing {})",
                              StageName(stage), StageName(u.producer), u.artifact));
    }
  }
}

RunManifest Pipeline::Run() {
  std::vector<StageRecord> records;
  manifest_.status = "ok";
  bool failed = false;
  for (Stage stage : kAllStages) {
    StageRecord record;
    record.stage = stage;
    if (failed) {
      record.status = "skipped";
    } else {
      try {
        record = Execute(stage);
      } catch (const std::exception &e) {
        record.stage = stage;
        record.status = "failed";
        record.error = e.what();
        failed = true;
        manifest_.status = "failed";
      }
    }
    records.push_back(std::move(record));
  }
  manifest_.stages = std::move(records);
  SaveManifest();
  return manifest_;
}

StageRecord Pipeline::RunStage(Stage stage) {
  RequireUpstream(stage);
  StageRecord record;
  try {
    record = Execute(stage);
  } catch (const std::exception &e) {
    record.stage = stage;
    record.status = "failed";
    record.error = e.what();
  }
  auto it = std::find_if(manifest_.stages.begin(), manifest_.stages.end(),
                         [&](const StageRecord &r) { return r.stage == stage; });
  if (it != manifest_.stages.end()) {
    *it = record;
  } else {
    manifest_.stages.push_back(record);
    std::sort(manifest_.stages.begin(), manifest_.stages.end(),
              [](const StageRecord &a, const StageRecord &b) { return a.stage < b.stage; });
  }
  manifest_.status = "ok";
  for (const auto &r : manifest_.stages) {
    if (r.status == "failed") manifest_.status = "failed";
  }
  SaveManifest();
  if (record.status == "failed") {
    throw Error(ErrorKind::kStageFailed,
                fmt::format("stage '{}' failed: {}", StageName(stage), record.error));
  }
  return record;
}

StageRecord Pipeline::Execute(Stage stage) {
  RequireUpstream(stage);
  const auto start = std::chrono::steady_clock::now();
  const StagePlan plan = PlanOf(stage, config_);

  StageRecord record;
  record.stage = stage;
  ordered_json key_doc;
  key_doc["stage"] = StageName(stage);
  key_doc["settings"] = plan.settings;
  for (const auto &rel : plan.internal_inputs) {
    const std::string digest = Sha256File(Path(rel));
    record.inputs.emplace_back(rel, digest);
    key_doc["internal"][rel] = digest;
  }
  for (const auto &path : plan.external_inputs) {
    const std::string digest = Sha256File(path);
    record.inputs.emplace_back(path, digest);
    key_doc["external"].push_back(digest);
  }
  record.key = Sha256Hex(key_doc.dump());

  // Cache hit: same key and every recorded output still intact.
  if (const StageRecord *previous = manifest_.Find(stage);
      previous && previous->status == "ok" && previous->key == record.key) {
    bool intact = true;
    for (const auto &[rel, digest] : previous->outputs) {
      if (!fs::exists(Path(rel)) || Sha256File(Path(rel)) != digest) {
        intact = false;
        break;
      }
    }
    if (intact) {
      record.status = "ok";
      record.cached = true;
      record.outputs = previous->outputs;
      record.diagnostics = previous->diagnostics;
      return record;
    }
  }

  std::vector<std::string> outputs;
  auto emit = [&](const std::string &rel, const std::string &content) {
    WriteFile(Path(rel), content);
    outputs.push_back(rel);
  };

  const CountryRegistry registry = CountryRegistry::Load(config_.registry);
  auto load_corpus = [&] {
    ParseOptions options;
    options.strict = true;
    return ParseCorpusFile(Path(artifacts::kCorpus), registry, options).records;
  };
  auto load_clusters = [&](std::span<const PublicationRecord> records) {
    std::ifstream in(Path(artifacts::kClusters));
    return ReadAssignments(in, records);
  };

  switch (stage) {
    case Stage::kIngest: {
      if (config_.inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "no input files given");
      CorpusStats stats;
      std::vector<PublicationRecord> all;
      std::set<std::string> seen;
      ParseOptions options;
      options.strict = config_.strict;
      for (const auto &input : config_.inputs) {
        ParsedCorpus parsed = ParseCorpusFile(input, registry, options);
        for (auto &r : parsed.records) {
          if (!seen.insert(r.pub_id).second) {
            --parsed.stats.records;
            ++parsed.stats.rejected_lines;
            parsed.stats.diagnostics.push_back(
                fmt::format("{}: duplicate pub_id {} across inputs", input, r.pub_id));
            continue;
          }
          all.push_back(std::move(r));
        }
        stats.Merge(parsed.stats);
      }
      std::sort(all.begin(), all.end(),
                [](const PublicationRecord &a, const PublicationRecord &b) {
                  return a.pub_id < b.pub_id;
                });
      const auto windowed = FilterWindow(all, config_.window);
      std::ostringstream corpus;
      WriteCorpus(corpus, windowed);
      emit(artifacts::kCorpus, corpus.str());
      ordered_json s;
      s["records"] = stats.records;
      s["records_in_window"] = windowed.size();
      s["mentions"] = stats.mentions;
      s["min_year"] = stats.min_year ? ordered_json(*stats.min_year) : ordered_json(nullptr);
      s["max_year"] = stats.max_year ? ordered_json(*stats.max_year) : ordered_json(nullptr);
      s["rejected_lines"] = stats.rejected_lines;
      s["rejected_mentions"] = stats.rejected_mentions;
      s["window"] = config_.window.ToString();
      emit(artifacts::kIngestStats, s.dump(2) + "\n");
      AddDiagnostics(record, stats.diagnostics);
      break;
    }
    case Stage::kDisambiguate: {
      const auto records = load_corpus();
      ScoringConfig scoring =
          config_.weights.empty() ? ScoringConfig{} : ScoringConfig::Load(config_.weights);
      scoring.threshold = config_.threshold;
      scoring.Validate();
      const auto clusters = Disambiguate(records, scoring);
      std::ostringstream out;
      WriteAssignments(out, clusters);
      emit(artifacts::kClusters, out.str());
      ordered_json v;
      v["clusters"] = clusters.size();
      if (config_.reference.empty()) {
        v["reference"] = nullptr;
      } else {
        const auto reference = LoadReference(config_.reference);
        const ValidationReport report = ValidateAgainstReference(clusters, records, reference);
        v["reference"] = fs::path(config_.reference).filename().string();
        v["matched_identities"] = report.matched_identities;
        v["correct"] = report.correct;
        v["incorrect"] = report.incorrect;
        v["correct_rate"] = OptionalNumber(report.correct_rate());
      }
      emit(artifacts::kValidation, v.dump(2) + "\n");
      break;
    }
    case Stage::kClassify: {
      const auto records = load_corpus();
      const RecordIndex index = IndexRecords(records);
      const auto clusters = load_clusters(records);
      std::vector<std::unique_ptr<GenderProvider>> owned;
      for (const auto &p : config_.gender_providers) {
        if (p.rfind("local:", 0) == 0) {
          owned.push_back(LocalGenderTable::Load(p.substr(6)));
        } else {
          RemoteProviderConfig rc;
          rc.base_url = p.substr(7);
          rc.api_key_env = config_.remote_api_key_env;
          owned.push_back(std::make_unique<RemoteGenderProvider>(rc));
        }
      }
      std::vector<GenderProvider *> providers;
      for (auto &p : owned) providers.push_back(p.get());
      DemographyOptions options{config_.window, config_.age_reference, config_.min_confidence};

      std::vector<MobilityClassification> classifications;
      std::vector<ResearcherDemographics> demographics;
      std::vector<std::string> diagnostics;
      std::string classification_text;
      for (const auto &cluster : clusters) {
        auto mobility = Classify(BuildTimeline(cluster, index, config_.window));
        demographics.push_back(
            AttributeDemographics(cluster, index, mobility, providers, options, &diagnostics));
        classification_text += SerializeClassification(mobility) + "\n";
        classifications.push_back(std::move(mobility));
      }
      emit(artifacts::kClassifications, classification_text);
      std::ostringstream demo;
      WriteDemographics(demo, demographics);
      emit(artifacts::kDemographics, demo.str());
      std::ostringstream table;
      table << "country\temigrant\timmigrant\toutgoing\tincoming\ttotal\texcluded\n";
      for (const auto &row : CountryMobilityTable(classifications, config_.min_country_count)) {
        table << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", row.country, row.emigrant,
                             row.immigrant, row.outgoing, row.incoming, row.total(),
                             row.excluded ? 1 : 0);
      }
      emit(artifacts::kCountryMobility, table.str());
      AddDiagnostics(record, diagnostics);
      break;
    }
    case Stage::kNetwork: {
      const auto records = load_corpus();
      const auto classifications = ReadClassifications(Path(artifacts::kClassifications));
      const CountryGraph collab = BuildCoauthorshipNetwork(records);
      const CountryGraph mobility = BuildMobilityNetwork(DirectionalMoves(classifications));
      const CountryGraph migrants = BuildMobilityNetwork(MigrantMoves(classifications));
      emit(artifacts::kCollabGraph, collab.ToJsonText());
      emit(artifacts::kMobilityGraph, mobility.ToJsonText());
      emit(artifacts::kMigrantFlows, migrants.ToJsonText());
      std::ostringstream collab_edges, mobility_edges;
      collab.ExportEdgeList(collab_edges);
      mobility.ExportEdgeList(mobility_edges);
      emit(artifacts::kCollabEdges, collab_edges.str());
      emit(artifacts::kMobilityEdges, mobility_edges.str());
      break;
    }
    case Stage::kMetrics: {
      ordered_json doc;
      doc["collaboration"] = GraphMetrics(ReadGraph(Path(artifacts::kCollabGraph)));
      doc["mobility"] = GraphMetrics(ReadGraph(Path(artifacts::kMobilityGraph)));
      emit(artifacts::kMetrics, doc.dump(2) + "\n");
      break;
    }
    case Stage::kReport: {
      const auto records = load_corpus();
      const RecordIndex index = IndexRecords(records);
      const auto clusters = load_clusters(records);
      const auto classifications = ReadClassifications(Path(artifacts::kClassifications));
      std::ifstream demo_in(Path(artifacts::kDemographics));
      const auto demographics = ReadDemographics(demo_in);
      const auto population = BuildPopulation(clusters, index, classifications, demographics);
      const CountryGraph collab = ReadGraph(Path(artifacts::kCollabGraph));
      const CountryGraph mobility = ReadGraph(Path(artifacts::kMobilityGraph));

      ReportInputs inputs{population, records, &registry, &collab, &mobility};
      const ReportSettings settings = config_.report_settings();
      std::vector<ReportTable> tables;
      for (ReportKind kind : config_.reports) {
        for (auto &table : BuildReport(kind, inputs, settings)) tables.push_back(std::move(table));
      }
      for (const auto &table : tables) {
        emit(fmt::format("{}/{}.csv", artifacts::kReportDir, table.name), table.ToCsv(settings));
      }
      emit(artifacts::kBundle, ReportBundle(tables, settings));
      break;
    }
  }

  for (const auto &rel : outputs) record.outputs.emplace_back(rel, Sha256File(Path(rel)));
  record.status = "ok";
  record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

void Pipeline::ExportEdges(const std::string &network, const std::string &path) const {
  const char *artifact = nullptr;
  if (network == "collab") artifact = artifacts::kCollabGraph;
  if (network == "mobility") artifact = artifacts::kMobilityGraph;
  if (!artifact) {
    throw Error(ErrorKind::kInvalidArgument, "network must be collab or mobility: " + network);
  }
  if (!fs::exists(Path(artifact))) {
    throw Error(ErrorKind::kMissingStage,
                fmt::format("edge export requires the output of stage 'network' (missing {})",
                            artifact));
  }
  std::ostringstream out;
  ReadGraph(Path(artifact)).ExportEdgeList(out);
  WriteFile(path, out.str());
}

}  // namespace scimob
