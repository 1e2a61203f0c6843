/* Copyright 2026 The dpsmc Authors
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

/* C interface of the dpsmc shared library: opaque configuration handles and
 * integer status codes. All heavy lifting stays inside the library; artifacts
 * are written as CSV/JSON/SVG files under caller-chosen directories.
 */

#ifndef DPSMC_DPSMC_H
#define DPSMC_DPSMC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#define DPSMC_API __declspec(dllexport)
#else
#define DPSMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
enum dpsmc_status {
  DPSMC_OK = 0,
  DPSMC_ERR_CONFIG = 2,  /* bad configuration or arguments */
  DPSMC_ERR_NUMERIC = 3, /* numeric failure during a run */
  DPSMC_ERR_IO = 4,      /* filesystem failure */
  DPSMC_ERR_INTERNAL = 5
};

typedef struct dpsmc_config dpsmc_config;

DPSMC_API int dpsmc_config_create(dpsmc_config** out);
DPSMC_API void dpsmc_config_destroy(dpsmc_config* cfg);

/* Loads a flat JSON config document. Unknown keys are rejected. */
DPSMC_API int dpsmc_config_load_file(dpsmc_config* cfg, const char* path);

/* Applies one key override; the value uses JSON literal syntax (bare strings
 * are accepted for string-valued keys). */
DPSMC_API int dpsmc_config_set(dpsmc_config* cfg, const char* key,
                               const char* value);

/* Switches to the full-scale experiment constants. */
DPSMC_API int dpsmc_config_apply_paper_scale(dpsmc_config* cfg);

/* Serializes the effective config as JSON into buf (NUL-terminated;
 * truncates if buflen is too small). */
DPSMC_API int dpsmc_config_dump(const dpsmc_config* cfg, char* buf,
                                size_t buflen);

typedef struct dpsmc_interval_result {
  double a_star;
  double b_star;
  double score;
  double score_se;
} dpsmc_interval_result;

typedef struct dpsmc_run_result {
  double posterior_mean_m;
  double posterior_mean_c;
  double posterior_sd_m;
  double posterior_sd_c;
  double a_star; /* NaN unless the run used an adaptive base interval */
  double b_star;
  uint64_t weight_underflows;
} dpsmc_run_result;

/* Grid search for the best standardized truncation interval; writes the
 * scored grid CSV into out_dir. `out` may be NULL. */
DPSMC_API int dpsmc_optimize_base(const dpsmc_config* cfg, const char* out_dir,
                                  dpsmc_interval_result* out);

/* Experiment runs. Artifacts land in out_dir with a method/epsilon/seed
 * prefix; `out` may be NULL. */
DPSMC_API int dpsmc_run_adaptive(const dpsmc_config* cfg, const char* out_dir,
                                 dpsmc_run_result* out);
DPSMC_API int dpsmc_run_nonadaptive(const dpsmc_config* cfg,
                                    const char* out_dir,
                                    dpsmc_run_result* out);
DPSMC_API int dpsmc_run_batch(const dpsmc_config* cfg, const char* out_dir,
                              dpsmc_run_result* out);

/* R independent replications of each configured method. */
DPSMC_API int dpsmc_run_replications(const dpsmc_config* cfg,
                                     const char* out_dir);

/* Renders SVG plots from the CSV artifacts found in run_dir. */
DPSMC_API int dpsmc_render_plots(const char* run_dir, const char* out_dir);

/* Message for the most recent failure on this thread. */
DPSMC_API const char* dpsmc_last_error(void);

DPSMC_API const char* dpsmc_version(void);

#ifdef __cplusplus
}
#endif

#endif /* DPSMC_DPSMC_H */
