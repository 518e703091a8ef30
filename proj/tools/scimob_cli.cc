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

// Command-line driver for the scimob pipeline.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scimob/scimob.h"

#ifndef SCIMOB_DATA_DIR
#define SCIMOB_DATA_DIR "data"
#endif

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::vector<std::string> inputs;
  std::string registry;
  std::string window;
  bool strict = false;
  std::optional<double> threshold;
  std::string weights;
  std::string reference;
  std::string gender_providers;
  std::optional<double> min_confidence;
  std::string age_reference;
  std::optional<size_t> min_country_count;
  std::string network = "collab";
  std::string export_edges;
  std::string report;
  std::string out_dir;
  bool allow_remote = false;
};

int ExitCode(scimob_status status) {
  switch (status) {
    case SCIMOB_OK: return 0;
    case SCIMOB_ERR_INVALID_ARGUMENT:
    case SCIMOB_ERR_PARSE: return 2;
    case SCIMOB_ERR_MISSING_STAGE: return 3;
    case SCIMOB_ERR_LOCKED: return 4;
    default: return 1;
  }
}

int Report(scimob_status status) {
  if (status != SCIMOB_OK) {
    std::cerr << "scimob: " << scimob_status_name(status) << ": " << scimob_last_error() << "\n";
  }
  return ExitCode(status);
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Config document: the --config file, overridden by explicit flags, with
// bundled data files as fallbacks.
json BuildConfig(const Flags &f) {
  json doc = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::runtime_error("cannot open config " + f.config);
    doc = json::parse(in);
    if (!doc.is_object()) throw std::runtime_error("config must be a JSON object");
  }
  if (!f.inputs.empty()) doc["inputs"] = f.inputs;
  if (!f.registry.empty()) doc["registry"] = f.registry;
  if (!f.window.empty()) doc["window"] = f.window;
  if (f.strict) doc["strict"] = true;
  if (f.threshold) doc["threshold"] = *f.threshold;
  if (!f.weights.empty()) doc["weights"] = f.weights;
  if (!f.reference.empty()) doc["reference"] = f.reference;
  if (!f.gender_providers.empty()) doc["gender_providers"] = SplitList(f.gender_providers);
  if (f.min_confidence) doc["min_confidence"] = *f.min_confidence;
  if (!f.age_reference.empty()) doc["age_reference"] = f.age_reference;
  if (f.min_country_count) doc["min_country_count"] = *f.min_country_count;
  if (!f.report.empty()) doc["reports"] = SplitList(f.report);
  if (!f.out_dir.empty()) doc["out_dir"] = f.out_dir;
  if (f.allow_remote) doc["reproducible"] = false;

  if (!doc.contains("registry")) doc["registry"] = std::string(SCIMOB_DATA_DIR) + "/registry.tsv";
  if (!doc.contains("gender_providers")) {
    doc["gender_providers"] = {"local:" + std::string(SCIMOB_DATA_DIR) + "/gender_table.tsv"};
  }
  return doc;
}

void PrintStages(const std::string &manifest_text, const std::string &only) {
  const json manifest = json::parse(manifest_text);
  for (const auto &stage : manifest["stages"]) {
    const std::string name = stage["stage"];
    if (!only.empty() && name != only) continue;
    std::string line = name + ": " + stage["status"].get<std::string>();
    if (stage["cached"].get<bool>()) line += " (cached)";
    if (stage.contains("error")) line += " - " + stage["error"].get<std::string>();
    std::cout << line << "\n";
    for (const auto &[path, _] : stage["outputs"].items()) std::cout << "  " << path << "\n";
  }
}

int Execute(const Flags &flags, const std::string &command) {
  json config;
  try {
    config = BuildConfig(flags);
  } catch (const std::exception &e) {
    std::cerr << "scimob: " << e.what() << "\n";
    return 2;
  }
  scimob_pipeline_t *pipeline = nullptr;
  scimob_status status = scimob_pipeline_create(config.dump().c_str(), &pipeline);
  if (status != SCIMOB_OK) return Report(status);

  char *manifest = nullptr;
  std::string stage = command;
  if (command == "run") {
    stage.clear();
    status = scimob_pipeline_run(pipeline, &manifest);
  } else {
    status = scimob_pipeline_run_stage(pipeline, command.c_str(), &manifest);
  }
  if (manifest) {
    PrintStages(manifest, stage);
    scimob_string_free(manifest);
  }
  if (status == SCIMOB_OK && !flags.export_edges.empty()) {
    status = scimob_pipeline_export_edges(pipeline, flags.network.c_str(),
                                          flags.export_edges.c_str());
    if (status == SCIMOB_OK) std::cout << "edges: " << flags.export_edges << "\n";
  }
  const int code = Report(status);
  scimob_pipeline_free(pipeline);
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Scientific mobility pipeline: corpus ingestion, author disambiguation, "
               "mobility classification, country networks and reports."};
  app.set_version_flag("--version", scimob_version());
  app.require_subcommand(1);

  Flags flags;
  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", flags.config, "JSON config file; flags override its keys")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", flags.out_dir, "Output directory (default: out)");
    cmd->add_option("--registry", flags.registry, "Country registry file");
    cmd->add_option("--window", flags.window, "Study window, START:END (default 2008:2017)");
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ingest", "Parse and window the publication corpus"},
      {"disambiguate", "Cluster author mentions into researchers"},
      {"classify", "Classify mobility and attribute demographics"},
      {"network", "Build collaboration and mobility graphs"},
      {"metrics", "Compute structural graph measures"},
      {"report", "Render CSV reports and the JSON bundle"},
      {"run", "Run every stage, reusing cached results"},
  };
  for (const auto &[name, help] : commands) {
    CLI::App *cmd = app.add_subcommand(name, help);
    add_common(cmd);
    const bool all = name == "run";
    if (all || name == "ingest") {
      cmd->add_option("--input", flags.inputs, "Line-delimited JSON corpus file(s)");
      cmd->add_flag("--strict", flags.strict, "Fail on the first malformed line or mention");
    }
    if (all || name == "disambiguate") {
      cmd->add_option("--threshold", flags.threshold, "Clustering score threshold");
      cmd->add_option("--weights", flags.weights, "JSON scoring weights")
          ->check(CLI::ExistingFile);
      cmd->add_option("--reference", flags.reference, "Reference identities for validation")
          ->check(CLI::ExistingFile);
    }
    if (all || name == "classify") {
      cmd->add_option("--gender-providers", flags.gender_providers,
                      "Comma-separated local:<path> / remote:<url> providers in priority order");
      cmd->add_option("--min-confidence", flags.min_confidence, "Gender confidence floor");
      cmd->add_option("--age-reference", flags.age_reference, "Academic age reference")
          ->check(CLI::IsMember({"event", "window-end"}));
      cmd->add_option("--min-country-count", flags.min_country_count,
                      "Minimum directional-mobile researchers per reported country");
      cmd->add_flag("--allow-remote", flags.allow_remote,
                    "Leave reproducibility mode so remote providers may be used");
    }
    if (all || name == "network") {
      cmd->add_option("--network", flags.network, "Graph for --export-edges")
          ->check(CLI::IsMember({"collab", "mobility"}));
      cmd->add_option("--export-edges", flags.export_edges, "Write the graph's edge list here");
    }
    if (all || name == "report") {
      cmd->add_option("--report", flags.report,
                      "shares, profiles, pyramid, gender, mena-shares, alluvial or all "
                      "(comma-separated)");
    }
    if (name == "report") {
      cmd->add_option("--min-country-count", flags.min_country_count,
                      "Minimum directional-mobile researchers per reported country");
    }
  }

  CLI11_PARSE(app, argc, argv);
  return Execute(flags, app.get_subcommands().front()->get_name());
}
