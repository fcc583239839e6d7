// Copyright 2026 The meshplan Authors
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

#ifndef MESHPLAN_MESHPLAN_H_
#define MESHPLAN_MESHPLAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MESHPLAN_BUILDING_LIBRARY)
#    define MESHPLAN_API __declspec(dllexport)
#  else
#    define MESHPLAN_API __declspec(dllimport)
#  endif
#else
#  define MESHPLAN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum meshplan_status {
  MESHPLAN_OK = 0,
  MESHPLAN_ERR_IO = 1,
  MESHPLAN_ERR_SYNTAX = 2,
  MESHPLAN_ERR_SCHEMA = 3,
  MESHPLAN_ERR_RANGE = 4,
  MESHPLAN_ERR_INVALID_ARGUMENT = 5,
  MESHPLAN_ERR_INFEASIBLE = 6,
  MESHPLAN_ERR_DISCONNECTED = 7,
  MESHPLAN_ERR_LOAD_INFEASIBLE = 8,
  MESHPLAN_ERR_TOO_LARGE = 9,
  MESHPLAN_ERR_NOT_A_TREE = 10,
  MESHPLAN_ERR_FORMAT = 11,
  MESHPLAN_ERR_INTERNAL = 99
} meshplan_status;

typedef enum meshplan_outcome {
  MESHPLAN_VERIFIED = 0,
  MESHPLAN_INFEASIBLE_COVERAGE = 1,
  MESHPLAN_DISCONNECTED = 2,
  MESHPLAN_ITERATION_BUDGET_EXHAUSTED = 3
} meshplan_outcome;

typedef enum meshplan_export_format {
  MESHPLAN_EXPORT_SVG = 0,
  MESHPLAN_EXPORT_GEOJSON = 1,
  MESHPLAN_EXPORT_CSV = 2
} meshplan_export_format;

typedef struct meshplan_scenario meshplan_scenario;
typedef struct meshplan_report meshplan_report;

typedef struct meshplan_overrides {
  int has_seed;
  uint64_t seed;
  int max_iterations;  /* 0 keeps the scenario value */
  double link_range_m; /* 0 keeps the scenario value */
} meshplan_overrides;

/* Message of the last failing call on this thread; never NULL. */
MESHPLAN_API const char* meshplan_last_error(void);
MESHPLAN_API const char* meshplan_status_name(meshplan_status status);
MESHPLAN_API const char* meshplan_version(void);

/* Strings returned through `char**` are owned by the caller. */
MESHPLAN_API void meshplan_string_free(char* text);

MESHPLAN_API meshplan_status meshplan_scenario_load_file(const char* path, meshplan_scenario** out);
MESHPLAN_API meshplan_status meshplan_scenario_parse(const char* json, size_t length,
                                                     meshplan_scenario** out);
MESHPLAN_API void meshplan_scenario_free(meshplan_scenario* scenario);
MESHPLAN_API meshplan_status meshplan_scenario_serialize(const meshplan_scenario* scenario,
                                                         char** out_json);

/* `*out_issues` counts errors and warnings; `*out_errors` only errors. */
MESHPLAN_API meshplan_status meshplan_scenario_validate(const meshplan_scenario* scenario,
                                                        int* out_issues, int* out_errors,
                                                        char** out_text);

MESHPLAN_API meshplan_status meshplan_candidates_csv(const meshplan_scenario* scenario,
                                                     char** out_csv);

/* Runs the design loop. A NULL `overrides` keeps every scenario value. */
MESHPLAN_API meshplan_status meshplan_design(const meshplan_scenario* scenario,
                                             const meshplan_overrides* overrides,
                                             meshplan_report** out);
MESHPLAN_API void meshplan_report_free(meshplan_report* report);
MESHPLAN_API int meshplan_report_verified(const meshplan_report* report);
MESHPLAN_API meshplan_outcome meshplan_report_outcome(const meshplan_report* report);
MESHPLAN_API int meshplan_report_iterations(const meshplan_report* report);
MESHPLAN_API const char* meshplan_report_cause(const meshplan_report* report);
/* MESHPLAN_ERR_INFEASIBLE when the report holds no plan. */
MESHPLAN_API meshplan_status meshplan_report_plan_json(const meshplan_report* report, char** out);
MESHPLAN_API meshplan_status meshplan_report_json(const meshplan_report* report, char** out);
MESHPLAN_API meshplan_status meshplan_report_trace_csv(const meshplan_report* report, char** out);
MESHPLAN_API meshplan_status meshplan_report_cost_json(const meshplan_report* report, char** out);

/* Exhaustive optimum; plan JSON on success. */
MESHPLAN_API meshplan_status meshplan_oracle(const meshplan_scenario* scenario,
                                             const meshplan_overrides* overrides, char** out_plan);

MESHPLAN_API meshplan_status meshplan_export_plan(const char* plan_json, size_t length,
                                                  meshplan_export_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MESHPLAN_MESHPLAN_H_ */
