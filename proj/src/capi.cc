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

#include "scimob/scimob.h"

#include <cstdlib>
#include <fstream>
#include <cstring>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "scimob/corpus.h"
#include "scimob/error.h"
#include "scimob/indicators.h"
#include "scimob/netmetrics.h"
#include "scimob/pipeline.h"

struct scimob_registry {
  scimob::CountryRegistry registry;
};

struct scimob_corpus {
  scimob::ParsedCorpus corpus;
};

struct scimob_graph {
  scimob::CountryGraph graph;
};

struct scimob_pipeline {
  explicit scimob_pipeline(scimob::PipelineConfig config) : pipeline(std::move(config)) {}
  scimob::Pipeline pipeline;
};

namespace {

thread_local std::string last_error;

scimob_status StatusOf(scimob::ErrorKind kind) {
  using scimob::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument: return SCIMOB_ERR_INVALID_ARGUMENT;
    case ErrorKind::kIo: return SCIMOB_ERR_IO;
    case ErrorKind::kParse: return SCIMOB_ERR_PARSE;
    case ErrorKind::kUnknownCountry: return SCIMOB_ERR_UNKNOWN_COUNTRY;
    case ErrorKind::kUndefined: return SCIMOB_ERR_UNDEFINED;
    case ErrorKind::kMissingStage: return SCIMOB_ERR_MISSING_STAGE;
    case ErrorKind::kLocked: return SCIMOB_ERR_LOCKED;
    case ErrorKind::kStageFailed: return SCIMOB_ERR_STAGE_FAILED;
  }
  return SCIMOB_ERR_INTERNAL;
}

scimob_status Fail(scimob_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
scimob_status Guard(F &&body) {
  try {
    last_error.clear();
    return body();
  } catch (const scimob::Error &e) {
    return Fail(StatusOf(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return Fail(SCIMOB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return Fail(SCIMOB_ERR_INTERNAL, e.what());
  }
}

char *Duplicate(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define SCIMOB_REQUIRE(cond)                                                     \
  do {                                                                           \
    if (!(cond)) return Fail(SCIMOB_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char *scimob_version(void) { return "0.1.0"; }

const char *scimob_status_name(scimob_status status) {
  switch (status) {
    case SCIMOB_OK: return "ok";
    case SCIMOB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SCIMOB_ERR_IO: return "i/o error";
    case SCIMOB_ERR_PARSE: return "parse error";
    case SCIMOB_ERR_UNKNOWN_COUNTRY: return "unknown country";
    case SCIMOB_ERR_UNDEFINED: return "undefined";
    case SCIMOB_ERR_MISSING_STAGE: return "missing stage";
    case SCIMOB_ERR_LOCKED: return "locked";
    case SCIMOB_ERR_STAGE_FAILED: return "stage failed";
    case SCIMOB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *scimob_last_error(void) { return last_error.c_str(); }

void scimob_string_free(char *s) { std::free(s); }

// ---------------------------------------------------------------------------

scimob_status scimob_registry_load(const char *path, scimob_registry_t **out) {
  SCIMOB_REQUIRE(path && out);
  return Guard([&] {
    *out = new scimob_registry{scimob::CountryRegistry::Load(path)};
    return SCIMOB_OK;
  });
}

void scimob_registry_free(scimob_registry_t *registry) { delete registry; }

size_t scimob_registry_size(const scimob_registry_t *registry) {
  return registry ? registry->registry.size() : 0;
}

scimob_status scimob_registry_region_of(const scimob_registry_t *registry, const char *code,
                                        char **region) {
  SCIMOB_REQUIRE(registry && code && region);
  return Guard([&] {
    *region = Duplicate(registry->registry.RegionOf(code));
    return SCIMOB_OK;
  });
}

scimob_status scimob_registry_is_mena(const scimob_registry_t *registry, const char *code,
                                      int *is_mena) {
  SCIMOB_REQUIRE(registry && code && is_mena);
  return Guard([&] {
    *is_mena = registry->registry.Get(code).is_mena ? 1 : 0;
    return SCIMOB_OK;
  });
}

// ---------------------------------------------------------------------------

scimob_status scimob_corpus_parse_file(const scimob_registry_t *registry, const char *path,
                                       int strict, scimob_corpus_t **out) {
  SCIMOB_REQUIRE(registry && path && out);
  return Guard([&] {
    scimob::ParseOptions options;
    options.strict = strict != 0;
    *out = new scimob_corpus{scimob::ParseCorpusFile(path, registry->registry, options)};
    return SCIMOB_OK;
  });
}

void scimob_corpus_free(scimob_corpus_t *corpus) { delete corpus; }

scimob_status scimob_corpus_stats_get(const scimob_corpus_t *corpus, scimob_corpus_stats *out) {
  SCIMOB_REQUIRE(corpus && out);
  const auto &s = corpus->corpus.stats;
  *out = scimob_corpus_stats{};
  out->records = s.records;
  out->mentions = s.mentions;
  out->rejected_lines = s.rejected_lines;
  out->rejected_mentions = s.rejected_mentions;
  out->has_years = s.min_year.has_value();
  out->min_year = s.min_year.value_or(0);
  out->max_year = s.max_year.value_or(0);
  return SCIMOB_OK;
}

// ---------------------------------------------------------------------------

scimob_status scimob_graph_create(scimob_graph_t **out) {
  SCIMOB_REQUIRE(out);
  return Guard([&] {
    *out = new scimob_graph{};
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_from_corpus(const scimob_corpus_t *corpus, scimob_graph_t **out) {
  SCIMOB_REQUIRE(corpus && out);
  return Guard([&] {
    *out = new scimob_graph{scimob::BuildCoauthorshipNetwork(corpus->corpus.records)};
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_from_json(const char *json, scimob_graph_t **out) {
  SCIMOB_REQUIRE(json && out);
  return Guard([&] {
    *out = new scimob_graph{scimob::CountryGraph::FromJsonText(json)};
    return SCIMOB_OK;
  });
}

void scimob_graph_free(scimob_graph_t *graph) { delete graph; }

scimob_status scimob_graph_add_edge(scimob_graph_t *graph, const char *a, const char *b,
                                    long weight) {
  SCIMOB_REQUIRE(graph && a && b && weight > 0);
  return Guard([&] {
    graph->graph.AddEdgeWeight(a, b, weight);
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_add_flow(scimob_graph_t *graph, const char *from, const char *to,
                                    long weight) {
  SCIMOB_REQUIRE(graph && from && to && weight > 0);
  return Guard([&] {
    graph->graph.AddFlow(from, to, weight);
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_measures(const scimob_graph_t *graph, scimob_measures *out) {
  SCIMOB_REQUIRE(graph && out);
  return Guard([&] {
    const auto m = scimob::ComputeStructuralMeasures(graph->graph);
    *out = scimob_measures{};
    out->vertex_count = m.vertex_count;
    out->edge_count = m.edge_count;
    out->has_density = m.density.has_value();
    out->density = m.density.value_or(0);
    out->average_degree = m.average_degree;
    out->has_diameter = m.diameter.value.has_value();
    out->diameter = m.diameter.value.value_or(0);
    out->disconnected = m.diameter.disconnected;
    out->clustering_coefficient = m.clustering_coefficient;
    out->has_assortativity = m.assortativity.has_value();
    out->assortativity = m.assortativity.value_or(0);
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_degree(const scimob_graph_t *graph, const char *country,
                                  int *degree) {
  SCIMOB_REQUIRE(graph && country && degree);
  return Guard([&] {
    *degree = scimob::DegreeCentrality(graph->graph, country);
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_closeness(const scimob_graph_t *graph, const char *country,
                                     double *closeness, int *isolated) {
  SCIMOB_REQUIRE(graph && country && closeness);
  return Guard([&] {
    const auto r = scimob::ClosenessCentrality(graph->graph, country);
    *closeness = r.value;
    if (isolated) *isolated = r.isolated;
    return SCIMOB_OK;
  });
}

scimob_status scimob_graph_export_edges(const scimob_graph_t *graph, const char *path) {
  SCIMOB_REQUIRE(graph && path);
  return Guard([&] {
    std::ofstream out(path);
    if (!out) throw scimob::Error(scimob::ErrorKind::kIo, std::string("cannot write ") + path);
    graph->graph.ExportEdgeList(out);
    return SCIMOB_OK;
  });
}

// ---------------------------------------------------------------------------

scimob_status scimob_density_counts(size_t vertex_count, size_t edge_count, double *density) {
  SCIMOB_REQUIRE(density);
  return Guard([&] {
    const auto d = scimob::DensityFromCounts(vertex_count, edge_count);
    if (!d) return Fail(SCIMOB_ERR_UNDEFINED, "density is undefined for fewer than two vertices");
    *density = *d;
    return SCIMOB_OK;
  });
}

scimob_status scimob_format_fixed(double value, int decimals, char **out) {
  SCIMOB_REQUIRE(out && decimals >= 0);
  return Guard([&] {
    *out = Duplicate(scimob::FormatFixed(value, decimals));
    return SCIMOB_OK;
  });
}

scimob_status scimob_format_percent(double share, int decimals, char **out) {
  SCIMOB_REQUIRE(out && decimals >= 0);
  return Guard([&] {
    *out = Duplicate(scimob::FormatPercent(share, decimals));
    return SCIMOB_OK;
  });
}

scimob_status scimob_mobility_shares(size_t not_mobile, size_t migrants, size_t directional,
                                     size_t non_directional, size_t insufficient, char **json) {
  SCIMOB_REQUIRE(json);
  return Guard([&] {
    const auto table = scimob::MobilitySharesFromCounts(not_mobile, migrants, directional,
                                                        non_directional, insufficient);
    nlohmann::ordered_json doc;
    doc["total"] = table.total;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
      nlohmann::ordered_json r;
      r["label"] = row.label;
      r["count"] = row.count;
      r["total_share"] = row.total_share;
      r["total_share_text"] = scimob::FormatPercent(row.total_share, 1);
      if (row.mobility_share) {
        r["mobility_share"] = *row.mobility_share;
        r["mobility_share_text"] = scimob::FormatPercent(*row.mobility_share, 0);
      }
      doc["rows"].push_back(r);
    }
    *json = Duplicate(doc.dump());
    return SCIMOB_OK;
  });
}

// ---------------------------------------------------------------------------

scimob_status scimob_pipeline_create(const char *config_json, scimob_pipeline_t **out) {
  SCIMOB_REQUIRE(config_json && out);
  return Guard([&] {
    *out = new scimob_pipeline(scimob::PipelineConfig::FromJsonText(config_json));
    return SCIMOB_OK;
  });
}

void scimob_pipeline_free(scimob_pipeline_t *pipeline) { delete pipeline; }

scimob_status scimob_pipeline_run(scimob_pipeline_t *pipeline, char **manifest_json) {
  SCIMOB_REQUIRE(pipeline);
  return Guard([&] {
    const auto manifest = pipeline->pipeline.Run();
    if (manifest_json) *manifest_json = Duplicate(manifest.ToJsonText());
    if (!manifest.ok()) {
      for (const auto &s : manifest.stages) {
        if (s.status == "failed") {
          return Fail(SCIMOB_ERR_STAGE_FAILED,
                      "stage '" + std::string(scimob::StageName(s.stage)) + "' failed: " + s.error);
        }
      }
    }
    return SCIMOB_OK;
  });
}

scimob_status scimob_pipeline_run_stage(scimob_pipeline_t *pipeline, const char *stage,
                                        char **manifest_json) {
  SCIMOB_REQUIRE(pipeline && stage);
  return Guard([&] {
    scimob_status status = SCIMOB_OK;
    try {
      pipeline->pipeline.RunStage(scimob::ParseStage(stage));
    } catch (const scimob::Error &e) {
      if (e.kind() != scimob::ErrorKind::kStageFailed) throw;
      status = Fail(SCIMOB_ERR_STAGE_FAILED, e.what());
    }
    if (manifest_json) *manifest_json = Duplicate(pipeline->pipeline.manifest().ToJsonText());
    return status;
  });
}

scimob_status scimob_pipeline_export_edges(scimob_pipeline_t *pipeline, const char *network,
                                           const char *path) {
  SCIMOB_REQUIRE(pipeline && network && path);
  return Guard([&] {
    pipeline->pipeline.ExportEdges(network, path);
    return SCIMOB_OK;
  });
}

scimob_status scimob_pipeline_config(const scimob_pipeline_t *pipeline, char **config_json) {
  SCIMOB_REQUIRE(pipeline && config_json);
  return Guard([&] {
    *config_json = Duplicate(pipeline->pipeline.config().ToJson().dump(2));
    return SCIMOB_OK;
  });
}

}  // extern "C"
