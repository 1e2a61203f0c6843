// Copyright 2026 The dpsmc Authors
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

#include "dpsmc/dpsmc.h"

#include <cmath>
#include <cstring>
#include <string>

#include "dpsmc/config.hpp"
#include "dpsmc/errors.hpp"
#include "dpsmc/harness.hpp"

struct dpsmc_config {
  dpsmc::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return DPSMC_OK;
  } catch (const dpsmc::ConfigError& e) {
    set_error(e.what());
    return DPSMC_ERR_CONFIG;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return DPSMC_ERR_CONFIG;
  } catch (const dpsmc::NumericError& e) {
    set_error(e.what());
    return DPSMC_ERR_NUMERIC;
  } catch (const dpsmc::IoError& e) {
    set_error(e.what());
    return DPSMC_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DPSMC_ERR_INTERNAL;
  }
}

void fill_result(const dpsmc::RunResult& res, dpsmc_run_result* out) {
  if (!out) return;
  out->posterior_mean_m = res.post_mean.m;
  out->posterior_mean_c = res.post_mean.c;
  out->posterior_sd_m = res.post_sd.m;
  out->posterior_sd_c = res.post_sd.c;
  const double nan = std::nan("");
  out->a_star = res.base_interval ? res.base_interval->first : nan;
  out->b_star = res.base_interval ? res.base_interval->second : nan;
  out->weight_underflows = res.weight_underflows;
}

int require(bool ok, const char* msg) {
  if (ok) return DPSMC_OK;
  set_error(msg);
  return DPSMC_ERR_CONFIG;
}

}  // namespace

extern "C" {

int dpsmc_config_create(dpsmc_config** out) {
  if (const int rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] { *out = new dpsmc_config(); });
}

void dpsmc_config_destroy(dpsmc_config* cfg) { delete cfg; }

int dpsmc_config_load_file(dpsmc_config* cfg, const char* path) {
  if (const int rc = require(cfg && path, "null argument")) return rc;
  return guarded([&] {
    cfg->cfg = dpsmc::ExperimentConfig::from_json_file(path);
  });
}

int dpsmc_config_set(dpsmc_config* cfg, const char* key, const char* value) {
  if (const int rc = require(cfg && key && value, "null argument")) return rc;
  return guarded([&] { cfg->cfg.set_key(key, value); });
}

int dpsmc_config_apply_paper_scale(dpsmc_config* cfg) {
  if (const int rc = require(cfg != nullptr, "null config")) return rc;
  return guarded([&] { cfg->cfg.apply_paper_scale(); });
}

int dpsmc_config_dump(const dpsmc_config* cfg, char* buf, size_t buflen) {
  if (const int rc = require(cfg && buf && buflen > 0, "null argument")) return rc;
  return guarded([&] {
    const std::string text = cfg->cfg.to_json_text();
    std::strncpy(buf, text.c_str(), buflen - 1);
    buf[buflen - 1] = '\0';
  });
}

int dpsmc_optimize_base(const dpsmc_config* cfg, const char* out_dir,
                        dpsmc_interval_result* out) {
  if (const int rc = require(cfg && out_dir, "null argument")) return rc;
  return guarded([&] {
    const dpsmc::FimGridResult res =
        dpsmc::run_optimize_base(cfg->cfg, out_dir);
    if (out) {
      out->a_star = res.a_star;
      out->b_star = res.b_star;
      out->score = res.entries[res.argmax_index].score;
      out->score_se = res.entries[res.argmax_index].std_error;
    }
  });
}

int dpsmc_run_adaptive(const dpsmc_config* cfg, const char* out_dir,
                       dpsmc_run_result* out) {
  if (const int rc = require(cfg && out_dir, "null argument")) return rc;
  return guarded([&] {
    fill_result(dpsmc::run_adaptive_experiment(cfg->cfg, out_dir), out);
  });
}

int dpsmc_run_nonadaptive(const dpsmc_config* cfg, const char* out_dir,
                          dpsmc_run_result* out) {
  if (const int rc = require(cfg && out_dir, "null argument")) return rc;
  return guarded([&] {
    fill_result(dpsmc::run_nonadaptive_experiment(cfg->cfg, out_dir), out);
  });
}

int dpsmc_run_batch(const dpsmc_config* cfg, const char* out_dir,
                    dpsmc_run_result* out) {
  if (const int rc = require(cfg && out_dir, "null argument")) return rc;
  return guarded([&] {
    fill_result(dpsmc::run_batch_experiment(cfg->cfg, out_dir), out);
  });
}

int dpsmc_run_replications(const dpsmc_config* cfg, const char* out_dir) {
  if (const int rc = require(cfg && out_dir, "null argument")) return rc;
  return guarded([&] { dpsmc::run_replications(cfg->cfg, out_dir); });
}

int dpsmc_render_plots(const char* run_dir, const char* out_dir) {
  if (const int rc = require(run_dir && out_dir, "null argument")) return rc;
  return guarded([&] { dpsmc::emit_plots(run_dir, out_dir); });
}

const char* dpsmc_last_error(void) { return g_last_error.c_str(); }

const char* dpsmc_version(void) { return "0.1.0"; }

}  // extern "C"
