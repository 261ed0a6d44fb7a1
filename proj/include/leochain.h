/* Copyright 2026 The Leochain Authors
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

/* C interface to the leochain simulator.
 *
 * Every call returns a leo_status. On failure, leo_last_error() describes
 * the problem (thread-local, valid until the next call on the same thread).
 * Strings returned through char** outputs are owned by the caller and must
 * be released with leo_string_free(). Documents are JSON text. */

#ifndef LEOCHAIN_H_
#define LEOCHAIN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LEO_API __declspec(dllexport)
#else
#define LEO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum leo_status {
  LEO_OK = 0,
  LEO_ERR_INVALID_ARGUMENT = 1,
  LEO_ERR_CONFIG = 2,
  LEO_ERR_INVARIANT = 3,
  LEO_ERR_NOT_FOUND = 4,
  LEO_ERR_PROTOCOL = 5,
  LEO_ERR_EXECUTION = 6,
  LEO_ERR_CORRUPTION = 7,
  LEO_ERR_IO = 8,
  LEO_ERR_INTERNAL = 9
} leo_status;

typedef struct leo_sim leo_sim;
typedef struct leo_server leo_server;

LEO_API const char* leo_version(void);
LEO_API const char* leo_last_error(void);
LEO_API const char* leo_status_name(leo_status s);
LEO_API void leo_string_free(char* s);

/* Parses and validates a scenario config; writes the normalized document
 * (all defaults filled in). */
LEO_API leo_status leo_config_normalize(const char* config_json, char** normalized_out);

/* --- steppable simulation --------------------------------------------------- */

LEO_API leo_status leo_sim_create(const char* config_json, leo_sim** out);
LEO_API void leo_sim_destroy(leo_sim* sim);
/* Runs one period (optionally with the configured workload) and the
 * migration into the next one. `period_out` may be NULL. */
LEO_API leo_status leo_sim_step(leo_sim* sim, int with_workload, int64_t* period_out);
/* Submits {"contract","op","args","submitter"?} and runs to quiescence.
 * Writes the API response document; the status is LEO_ERR_INVALID_ARGUMENT
 * for a malformed invocation and LEO_ERR_EXECUTION when the contract
 * rejected it (the response is still written). */
LEO_API leo_status leo_sim_submit(leo_sim* sim, const char* invocation_json, char** response_out);
LEO_API leo_status leo_sim_tx_status(leo_sim* sim, const char* tx_id, char** response_out);
/* LEO_ERR_NOT_FOUND when no replica read holds the key. */
LEO_API leo_status leo_sim_read_state(leo_sim* sim, const char* key, size_t r, char** response_out);
LEO_API leo_status leo_sim_grid(leo_sim* sim, char** response_out);
LEO_API leo_status leo_sim_metrics(leo_sim* sim, char** response_out);
LEO_API leo_status leo_sim_convergence(leo_sim* sim, char** response_out);

/* --- batch runs ----------------------------------------------------------------- */

/* Runs the scenario. `out_dir` (may be NULL) overrides the config's output
 * directory. Returns LEO_ERR_INVARIANT, after writing outputs, when any
 * convergence check failed. */
LEO_API leo_status leo_run_scenario(const char* config_json, const char* out_dir, char** summary_out);
/* `k_range` is "5..10" or "5,6,7". */
LEO_API leo_status leo_run_sweep(const char* config_json, const char* k_range, const char* out_dir,
                                 char** sweep_out);
LEO_API leo_status leo_report(const char* in_dir, char** text_out);

/* --- control server --------------------------------------------------------------- */

/* Settings come from the built-in defaults, then LEOCHAIN_HOST,
 * LEOCHAIN_PORT and LEOCHAIN_CORS_ORIGIN, then the explicit arguments.
 * Pass NULL (strings) or a negative port to leave a setting alone; port 0
 * picks a free port. */
LEO_API leo_status leo_server_start(const char* config_json, const char* host, int port,
                                    const char* cors_origin, const char* static_dir, leo_server** out);
LEO_API int leo_server_port(const leo_server* server);
/* Blocks until the server stops. */
LEO_API void leo_server_wait(leo_server* server);
LEO_API void leo_server_stop(leo_server* server);
LEO_API void leo_server_destroy(leo_server* server);

#ifdef __cplusplus
}
#endif

#endif /* LEOCHAIN_H_ */
