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

// Command-line front end. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpsmc/dpsmc.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  bool paper_scale = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<std::int64_t> n, N, M, Ng, grid_resolution, R, threads;
  std::vector<std::string> sets;  // raw key=value overrides
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "master RNG seed");
  cmd->add_option("--epsilon", opts.epsilon, "privacy level");
  cmd->add_option("--n", opts.n, "record count");
  cmd->add_option("--N", opts.N, "particle count");
  cmd->add_option("--M", opts.M, "outer Monte Carlo sample count");
  cmd->add_option("--Ng", opts.Ng, "gradient sample count");
  cmd->add_option("--grid-resolution", opts.grid_resolution,
                  "grid points per axis");
  cmd->add_option("--R", opts.R, "replication count");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = auto)");
  cmd->add_flag("--paper-scale", opts.paper_scale,
                "use the full-scale experiment constants");
  cmd->add_option("--set", opts.sets,
                  "extra key=value config override (repeatable)");
}

using ConfigPtr = std::unique_ptr<dpsmc_config, decltype(&dpsmc_config_destroy)>;

int fail(int rc) {
  std::fprintf(stderr, "error: %s\n", dpsmc_last_error());
  return rc;
}

/// Builds the effective config: file, then paper scale, then flag overrides.
int build_config(const CommonOpts& opts, ConfigPtr& cfg) {
  dpsmc_config* raw = nullptr;
  if (const int rc = dpsmc_config_create(&raw)) return rc;
  cfg = ConfigPtr(raw, &dpsmc_config_destroy);
  if (!opts.config_path.empty()) {
    if (const int rc = dpsmc_config_load_file(cfg.get(), opts.config_path.c_str()))
      return rc;
  }
  if (opts.paper_scale) {
    if (const int rc = dpsmc_config_apply_paper_scale(cfg.get())) return rc;
  }
  const auto set_int = [&](const char* key,
                           const std::optional<std::int64_t>& v) -> int {
    if (!v) return DPSMC_OK;
    return dpsmc_config_set(cfg.get(), key, std::to_string(*v).c_str());
  };
  if (opts.seed) {
    if (const int rc = dpsmc_config_set(cfg.get(), "seed",
                                        std::to_string(*opts.seed).c_str()))
      return rc;
  }
  if (opts.epsilon) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *opts.epsilon);
    if (const int rc = dpsmc_config_set(cfg.get(), "epsilon", buf)) return rc;
  }
  if (const int rc = set_int("n", opts.n)) return rc;
  if (const int rc = set_int("N", opts.N)) return rc;
  if (const int rc = set_int("M", opts.M)) return rc;
  if (const int rc = set_int("Ng", opts.Ng)) return rc;
  if (const int rc = set_int("grid_resolution", opts.grid_resolution)) return rc;
  if (const int rc = set_int("R", opts.R)) return rc;
  if (const int rc = set_int("threads", opts.threads)) return rc;
  for (const std::string& kv : opts.sets) {
    const auto pos = kv.find('=');
    if (pos == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                   kv.c_str());
      return DPSMC_ERR_CONFIG;
    }
    if (const int rc = dpsmc_config_set(cfg.get(), kv.substr(0, pos).c_str(),
                                        kv.substr(pos + 1).c_str()))
      return rc;
  }
  return DPSMC_OK;
}

void print_run(const char* method, const dpsmc_run_result& res) {
  std::printf("%s: posterior mean m=%.6g c=%.6g (sd m=%.3g c=%.3g)\n", method,
              res.posterior_mean_m, res.posterior_mean_c, res.posterior_sd_m,
              res.posterior_sd_c);
  if (res.a_star == res.a_star) {  // not NaN
    std::printf("base interval: a*=%.6g b*=%.6g\n", res.a_star, res.b_star);
  }
  if (res.weight_underflows > 0) {
    std::printf("warning: %llu weight underflow events\n",
                static_cast<unsigned long long>(res.weight_underflows));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private online estimation with adaptive truncation"};
  app.set_version_flag("--version", dpsmc_version());
  app.require_subcommand(1);

  CommonOpts opt_optimize, opt_adaptive, opt_nonadaptive, opt_batch, opt_repl;
  CLI::App* cmd_optimize = app.add_subcommand(
      "optimize-base", "grid-search the standardized truncation interval");
  add_common(cmd_optimize, opt_optimize);
  CLI::App* cmd_adaptive =
      app.add_subcommand("run-adaptive", "online run with adaptive truncation");
  add_common(cmd_adaptive, opt_adaptive);
  CLI::App* cmd_nonadaptive = app.add_subcommand(
      "run-nonadaptive", "online run with a constant interval");
  add_common(cmd_nonadaptive, opt_nonadaptive);
  CLI::App* cmd_batch =
      app.add_subcommand("run-batch", "batch MCMC on constant-interval records");
  add_common(cmd_batch, opt_batch);
  CLI::App* cmd_repl =
      app.add_subcommand("replicate", "independent replications of each method");
  add_common(cmd_repl, opt_repl);

  std::string plot_run_dir, plot_out_dir;
  CLI::App* cmd_plot = app.add_subcommand("plot", "render SVG plots from run CSVs");
  cmd_plot->add_option("--run-dir", plot_run_dir, "directory with run artifacts")
      ->required();
  cmd_plot->add_option("--out", plot_out_dir, "output directory (default: run dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : DPSMC_ERR_CONFIG;
  }

  if (cmd_plot->parsed()) {
    const std::string out = plot_out_dir.empty() ? plot_run_dir : plot_out_dir;
    if (const int rc = dpsmc_render_plots(plot_run_dir.c_str(), out.c_str())) {
      return fail(rc);
    }
    std::printf("plots written to %s\n", out.c_str());
    return 0;
  }

  const CommonOpts* opts = nullptr;
  if (cmd_optimize->parsed()) opts = &opt_optimize;
  if (cmd_adaptive->parsed()) opts = &opt_adaptive;
  if (cmd_nonadaptive->parsed()) opts = &opt_nonadaptive;
  if (cmd_batch->parsed()) opts = &opt_batch;
  if (cmd_repl->parsed()) opts = &opt_repl;

  ConfigPtr cfg(nullptr, &dpsmc_config_destroy);
  if (const int rc = build_config(*opts, cfg)) return fail(rc);

  if (cmd_optimize->parsed()) {
    dpsmc_interval_result res{};
    if (const int rc = dpsmc_optimize_base(cfg.get(), opts->out_dir.c_str(), &res))
      return fail(rc);
    std::printf("argmax: a*=%.6g b*=%.6g score=%.6g (se %.3g)\n", res.a_star,
                res.b_star, res.score, res.score_se);
    return 0;
  }
  if (cmd_adaptive->parsed()) {
    dpsmc_run_result res{};
    if (const int rc = dpsmc_run_adaptive(cfg.get(), opts->out_dir.c_str(), &res))
      return fail(rc);
    print_run("adaptive", res);
    return 0;
  }
  if (cmd_nonadaptive->parsed()) {
    dpsmc_run_result res{};
    if (const int rc =
            dpsmc_run_nonadaptive(cfg.get(), opts->out_dir.c_str(), &res))
      return fail(rc);
    print_run("nonadaptive", res);
    return 0;
  }
  if (cmd_batch->parsed()) {
    dpsmc_run_result res{};
    if (const int rc = dpsmc_run_batch(cfg.get(), opts->out_dir.c_str(), &res))
      return fail(rc);
    print_run("batch", res);
    return 0;
  }
  if (const int rc = dpsmc_run_replications(cfg.get(), opts->out_dir.c_str()))
    return fail(rc);
  std::printf("replication tables written to %s\n", opts->out_dir.c_str());
  return 0;
}
