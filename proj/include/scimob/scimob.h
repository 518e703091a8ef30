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

/* C interface to the scimob library.
 *
 * Every function returns a scimob_status. On failure the message of the
 * most recent error on the calling thread is available from
 * scimob_last_error(). Strings returned through char** out-parameters are
 * heap-allocated and must be released with scimob_string_free(). Handles
 * are released with their matching *_free function; passing NULL to any
 * *_free function is a no-op.
 */
#ifndef SCIMOB_SCIMOB_H_
#define SCIMOB_SCIMOB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SCIMOB_API __declspec(dllexport)
#else
#define SCIMOB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scimob_status {
  SCIMOB_OK = 0,
  SCIMOB_ERR_INVALID_ARGUMENT = 1,
  SCIMOB_ERR_IO = 2,
  SCIMOB_ERR_PARSE = 3,
  SCIMOB_ERR_UNKNOWN_COUNTRY = 4,
  SCIMOB_ERR_UNDEFINED = 5,
  SCIMOB_ERR_MISSING_STAGE = 6,
  SCIMOB_ERR_LOCKED = 7,
  SCIMOB_ERR_STAGE_FAILED = 8,
  SCIMOB_ERR_INTERNAL = 9
} scimob_status;

typedef struct scimob_registry scimob_registry_t;
typedef struct scimob_corpus scimob_corpus_t;
typedef struct scimob_graph scimob_graph_t;
typedef struct scimob_pipeline scimob_pipeline_t;

SCIMOB_API const char *scimob_version(void);
SCIMOB_API const char *scimob_status_name(scimob_status status);
/* Empty string when the calling thread has seen no error. */
SCIMOB_API const char *scimob_last_error(void);
SCIMOB_API void scimob_string_free(char *s);

/* Country registry. */
SCIMOB_API scimob_status scimob_registry_load(const char *path, scimob_registry_t **out);
SCIMOB_API void scimob_registry_free(scimob_registry_t *registry);
SCIMOB_API size_t scimob_registry_size(const scimob_registry_t *registry);
/* "MENA" for MENA members, else the continent. */
SCIMOB_API scimob_status scimob_registry_region_of(const scimob_registry_t *registry,
                                                   const char *code, char **region);
SCIMOB_API scimob_status scimob_registry_is_mena(const scimob_registry_t *registry,
                                                 const char *code, int *is_mena);

/* Publication corpus. */
typedef struct scimob_corpus_stats {
  size_t records;
  size_t mentions;
  size_t rejected_lines;
  size_t rejected_mentions;
  int has_years;
  int min_year;
  int max_year;
} scimob_corpus_stats;

SCIMOB_API scimob_status scimob_corpus_parse_file(const scimob_registry_t *registry,
                                                  const char *path, int strict,
                                                  scimob_corpus_t **out);
SCIMOB_API void scimob_corpus_free(scimob_corpus_t *corpus);
SCIMOB_API scimob_status scimob_corpus_stats_get(const scimob_corpus_t *corpus,
                                                 scimob_corpus_stats *out);

/* Country graphs. */
typedef struct scimob_measures {
  size_t vertex_count;
  size_t edge_count;
  int has_density;
  double density;
  double average_degree;
  int has_diameter;
  int diameter;
  int disconnected;
  double clustering_coefficient;
  int has_assortativity;
  double assortativity;
} scimob_measures;

SCIMOB_API scimob_status scimob_graph_create(scimob_graph_t **out);
/* Co-authorship graph of a corpus. */
SCIMOB_API scimob_status scimob_graph_from_corpus(const scimob_corpus_t *corpus,
                                                  scimob_graph_t **out);
SCIMOB_API scimob_status scimob_graph_from_json(const char *json, scimob_graph_t **out);
SCIMOB_API void scimob_graph_free(scimob_graph_t *graph);
SCIMOB_API scimob_status scimob_graph_add_edge(scimob_graph_t *graph, const char *a,
                                               const char *b, long weight);
SCIMOB_API scimob_status scimob_graph_add_flow(scimob_graph_t *graph, const char *from,
                                               const char *to, long weight);
SCIMOB_API scimob_status scimob_graph_measures(const scimob_graph_t *graph,
                                               scimob_measures *out);
SCIMOB_API scimob_status scimob_graph_degree(const scimob_graph_t *graph, const char *country,
                                             int *degree);
SCIMOB_API scimob_status scimob_graph_closeness(const scimob_graph_t *graph,
                                                const char *country, double *closeness,
                                                int *isolated);
SCIMOB_API scimob_status scimob_graph_export_edges(const scimob_graph_t *graph,
                                                   const char *path);

/* Arithmetic helpers. SCIMOB_ERR_UNDEFINED for fewer than two vertices. */
SCIMOB_API scimob_status scimob_density_counts(size_t vertex_count, size_t edge_count,
                                               double *density);
SCIMOB_API scimob_status scimob_format_fixed(double value, int decimals, char **out);
SCIMOB_API scimob_status scimob_format_percent(double share, int decimals, char **out);

/* Mobility share table as JSON, from researcher counts per typology. */
SCIMOB_API scimob_status scimob_mobility_shares(size_t not_mobile, size_t migrants,
                                                size_t directional, size_t non_directional,
                                                size_t insufficient, char **json);

/* Pipeline. The config is a JSON object (see README). Holding a pipeline
 * holds the lock of its output directory. */
SCIMOB_API scimob_status scimob_pipeline_create(const char *config_json,
                                                scimob_pipeline_t **out);
SCIMOB_API void scimob_pipeline_free(scimob_pipeline_t *pipeline);
/* Runs every stage. *manifest_json (optional) receives the run manifest
 * even when a stage fails, in which case SCIMOB_ERR_STAGE_FAILED is
 * returned. */
SCIMOB_API scimob_status scimob_pipeline_run(scimob_pipeline_t *pipeline, char **manifest_json);
SCIMOB_API scimob_status scimob_pipeline_run_stage(scimob_pipeline_t *pipeline,
                                                   const char *stage, char **manifest_json);
/* network is "collab" or "mobility". */
SCIMOB_API scimob_status scimob_pipeline_export_edges(scimob_pipeline_t *pipeline,
                                                      const char *network, const char *path);
/* The effective config as JSON. */
SCIMOB_API scimob_status scimob_pipeline_config(const scimob_pipeline_t *pipeline,
                                                char **config_json);

#ifdef __cplusplus
}
#endif

#endif /* SCIMOB_SCIMOB_H_ */
