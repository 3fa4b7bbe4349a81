/* Copyright 2026 The twophase Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the twophase library. All handles are opaque. Every call
 * returns a tp_status; on failure the message is available from
 * tp_last_error() on the calling thread until the next call. Strings returned
 * through `char**` out-parameters are owned by the caller and released with
 * tp_string_free(). */

#ifndef TWOPHASE_TWOPHASE_H_
#define TWOPHASE_TWOPHASE_H_

#include <stddef.h>

#if defined(_WIN32)
#define TP_API __declspec(dllexport)
#else
#define TP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  TP_OK = 0,
  TP_ERR_PARSE = 1,
  TP_ERR_LIBRARY = 2,
  TP_ERR_NETLIST = 3,
  TP_ERR_UNSUPPORTED = 4,
  TP_ERR_TRANSFORM = 5,
  TP_ERR_RETIME = 6,
  TP_ERR_SIMULATION = 7,
  TP_ERR_VERIFY = 8,
  TP_ERR_TIMING = 9,
  TP_ERR_IO = 10,
  TP_ERR_USAGE = 11,
  TP_ERR_INVALID_ARGUMENT = 12,
  TP_ERR_INTERNAL = 13
} tp_status;

typedef enum { TP_FORMAT_VERILOG = 0, TP_FORMAT_CANONICAL = 1 } tp_format;

typedef struct tp_library tp_library;
typedef struct tp_netlist tp_netlist;
typedef struct tp_convert_result tp_convert_result;

TP_API const char* tp_version(void);
TP_API const char* tp_last_error(void);
TP_API const char* tp_status_name(tp_status status);
TP_API void tp_string_free(char* s);

/* Cell libraries. */
TP_API tp_status tp_library_default(tp_library** out);
TP_API tp_status tp_library_parse(const char* json_text, tp_library** out);
TP_API void tp_library_free(tp_library* lib);

/* Netlists. `filename` is only used in diagnostics and may be NULL. */
TP_API tp_status tp_netlist_parse(const tp_library* lib, const char* text, tp_format format,
                                  const char* filename, tp_netlist** out);
TP_API tp_status tp_netlist_emit(const tp_netlist* nl, tp_format format, char** out);
TP_API tp_status tp_netlist_name(const tp_netlist* nl, char** out);
/* JSON array of {severity, locus, message}. */
TP_API tp_status tp_netlist_validate(const tp_library* lib, const tp_netlist* nl, char** out);
/* JSON object {name, sequential, combinational, total, inputs, outputs}. */
TP_API tp_status tp_netlist_stats(const tp_library* lib, const tp_netlist* nl, char** out);
TP_API void tp_netlist_free(tp_netlist* nl);

/* Flip-flop to two-phase latch conversion. `config_json` may be NULL. */
TP_API tp_status tp_convert(const tp_library* lib, const tp_netlist* nl, const char* config_json,
                            tp_convert_result** out);
/* The returned netlist is a new handle owned by the caller. */
TP_API tp_status tp_convert_result_netlist(const tp_convert_result* r, tp_netlist** out);
TP_API tp_status tp_convert_result_trace(const tp_convert_result* r, char** out);
TP_API tp_status tp_convert_result_stage_log(const tp_convert_result* r, char** out);
TP_API tp_status tp_convert_result_lags(const tp_convert_result* r, char** out);
TP_API void tp_convert_result_free(tp_convert_result* r);

/* Two-coloring and co-simulation of `transformed` against `original`.
 * Writes a JSON report; `passed` is 1 iff no violation and no divergence. */
TP_API tp_status tp_verify(const tp_library* lib, const tp_netlist* original,
                           const tp_netlist* transformed, const char* config_json, size_t warmup,
                           char** report, int* passed);

/* Latch static timing. `passed` is 1 iff feasible with no negative slack. */
TP_API tp_status tp_sta(const tp_library* lib, const tp_netlist* nl, const char* config_json,
                        char** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* TWOPHASE_TWOPHASE_H_ */
