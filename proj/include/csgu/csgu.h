// Copyright 2026 The CSGU Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/* C interface to the certified signed-graph unlearning library.
 *
 * Every fallible call returns a csgu_status. On failure, csgu_last_error()
 * returns a message for the calling thread, valid until that thread's next
 * call into the library. Strings handed out through char** parameters are
 * owned by the caller and released with csgu_string_free().
 */
#ifndef CSGU_CSGU_H_
#define CSGU_CSGU_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CSGU_API __declspec(dllexport)
#else
#define CSGU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum csgu_status {
  CSGU_OK = 0,
  CSGU_ERR_INVALID_ARGUMENT = 1,
  CSGU_ERR_IO = 2,
  CSGU_ERR_PARSE = 3,
  CSGU_ERR_NOT_FOUND = 4,
  CSGU_ERR_NUMERIC = 5,
  CSGU_ERR_CONVERGENCE = 6,
  CSGU_ERR_INTERNAL = 7
} csgu_status;

typedef struct csgu_graph csgu_graph;

CSGU_API const char* csgu_version(void);
CSGU_API const char* csgu_last_error(void);
CSGU_API const char* csgu_status_name(csgu_status status);
CSGU_API void csgu_string_free(char* str);

/* Graphs. `format` is "signed_triple" or "rated_csv". */
CSGU_API csgu_status csgu_graph_load(const char* path, const char* format,
                                     uint64_t feature_seed, csgu_graph** out);
CSGU_API csgu_status csgu_graph_synthetic(uint64_t seed, size_t num_nodes,
                                          csgu_graph** out);
CSGU_API void csgu_graph_free(csgu_graph* graph);
CSGU_API size_t csgu_graph_num_nodes(const csgu_graph* graph);
CSGU_API size_t csgu_graph_num_edges(const csgu_graph* graph);
CSGU_API size_t csgu_graph_num_negative(const csgu_graph* graph);
/* Writes +1, -1, or 0 when the pair is absent. */
CSGU_API csgu_status csgu_graph_sign(const csgu_graph* graph, uint32_t u,
                                     uint32_t v, int* sign);
CSGU_API csgu_status csgu_graph_count_triangles(const csgu_graph* graph,
                                                size_t* count);
/* Writes the graph as `u v s` lines. */
CSGU_API csgu_status csgu_graph_save(const csgu_graph* graph, const char* path);

/* Certification region for a deletion set given as `num_edges` (u, v) pairs
 * in `pairs` (2 * num_edges ids). `mode` is "tin" or "khop"; `khop_k` is
 * ignored for "tin". */
CSGU_API csgu_status csgu_region(const csgu_graph* graph, const uint32_t* pairs,
                                 size_t num_edges, const char* mode,
                                 size_t khop_k, size_t* region_size,
                                 size_t* iterations);

CSGU_API csgu_status csgu_noise_scale(double epsilon, double delta,
                                      double sensitivity, double* sigma);

/* Runs one pipeline from a JSON config object (keys as in the CLI's
 * --config file). Either output pointer may be NULL. */
CSGU_API csgu_status csgu_run(const char* config_json, char** report_json,
                              char** csv_row);
CSGU_API const char* csgu_csv_header(void);

#ifdef __cplusplus
}
#endif

#endif /* CSGU_CSGU_H_ */
