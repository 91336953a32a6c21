/* Copyright 2026 The Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the channel-assignment engine. All functions return a
 * cbrsca_status; on failure, cbrsca_last_error() describes the problem for
 * the calling thread. Objects are opaque handles owned by the caller and
 * released with the matching _free function. Strings returned through out
 * parameters are heap-allocated and released with cbrsca_string_free().
 *
 * Structured inputs and outputs cross this boundary as JSON text; the schema
 * matches the `cbrsca` CLI documentation.
 */

#ifndef CBRSCA_H_
#define CBRSCA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CBRSCA_API __declspec(dllexport)
#else
#define CBRSCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cbrsca_status {
  CBRSCA_OK = 0,
  CBRSCA_ERROR_INVALID_ARGUMENT = 1,
  CBRSCA_ERROR_PARSE = 2,
  CBRSCA_ERROR_IO = 3,
  CBRSCA_ERROR_TOO_LARGE = 4,
  CBRSCA_ERROR_INTERNAL = 5
} cbrsca_status;

typedef struct cbrsca_scenario cbrsca_scenario;
typedef struct cbrsca_graph cbrsca_graph;
typedef struct cbrsca_solution cbrsca_solution;

CBRSCA_API const char* cbrsca_version(void);

/* Message for the most recent failure on this thread; never NULL. */
CBRSCA_API const char* cbrsca_last_error(void);

CBRSCA_API void cbrsca_string_free(char* s);

/* options_json: {"tier":"pa","grid_width":10,"r_s":1.0,
 *                "excluded_channels":[...]}
 *            or {"tier":"gaa","region_radius_km":0.8,"density_per_km2":75,
 *                "n_nodes":-1,"demand_limit":4,"activity_max":4.0,
 *                "pa_nodes_per_licensee":10,"licensee_blocks":[...],
 *                "radio":{...},"nodes_csv":"path","center_lat":..,
 *                "center_lon":..}
 */
CBRSCA_API cbrsca_status cbrsca_scenario_generate(const char* options_json,
                                                  uint64_t seed,
                                                  cbrsca_scenario** out);
CBRSCA_API cbrsca_status cbrsca_scenario_from_json(const char* json_text,
                                                   cbrsca_scenario** out);
CBRSCA_API cbrsca_status cbrsca_scenario_to_json(const cbrsca_scenario* s,
                                                 char** out_json);
CBRSCA_API void cbrsca_scenario_free(cbrsca_scenario* s);

/* options_json: {"kind":"pa"|"pa_jobs"|"gaa_binary"|"gaa_coex"|
 *                "gaa_nonbinary",
 *                "alpha_bar":1.0,"seed":1,            (gaa_coex)
 *                "reward":"linear","penalty":"interference",
 *                "lambda":1.0}                        (gaa_nonbinary)
 */
CBRSCA_API cbrsca_status cbrsca_graph_build(const cbrsca_scenario* s,
                                            const char* options_json,
                                            cbrsca_graph** out);
CBRSCA_API cbrsca_status cbrsca_graph_from_json(const char* json_text,
                                                cbrsca_graph** out);
CBRSCA_API cbrsca_status cbrsca_graph_to_json(const cbrsca_graph* g,
                                              char** out_json);
CBRSCA_API cbrsca_status cbrsca_graph_stats(const cbrsca_graph* g,
                                            int32_t* n_vertices,
                                            int64_t* n_edges,
                                            int64_t* n_penalty_edges);
CBRSCA_API void cbrsca_graph_free(cbrsca_graph* g);

/* options_json: {"solver":"gmwis"|"um"|"npsmc"|"mra"|"random",
 *                "lambda":1.0,"epsilon":0.0,"trials":10000,"seed":1,
 *                "n_colors":10,"demands":[...]}
 * The graph must match the solver (binary graphs for gmwis/mra, clustered
 * graphs for um/random, job graphs for npsmc).
 */
CBRSCA_API cbrsca_status cbrsca_solve(const cbrsca_graph* g,
                                      const char* options_json,
                                      cbrsca_solution** out);
CBRSCA_API cbrsca_status cbrsca_solution_to_json(const cbrsca_solution* s,
                                                 char** out_json);
CBRSCA_API void cbrsca_solution_free(cbrsca_solution* s);

/* Runs a full experiment config (JSON, see the CLI documentation) and writes
 * the results CSV plus a JSON manifest. */
CBRSCA_API cbrsca_status cbrsca_bench_run(const char* config_json,
                                          const char* csv_path,
                                          const char* manifest_path);

/* Re-runs the config once per axis value. */
CBRSCA_API cbrsca_status cbrsca_sweep_run(const char* config_json,
                                          const char* axis,
                                          const double* values,
                                          size_t n_values,
                                          const char* csv_path,
                                          const char* manifest_path);

#ifdef __cplusplus
}
#endif

#endif /* CBRSCA_H_ */
