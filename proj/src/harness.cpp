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

#include "dpsmc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dpsmc/csv.hpp"
#include "dpsmc/errors.hpp"
#include "dpsmc/parallel.hpp"
#include "dpsmc/svg.hpp"

namespace dpsmc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_eps(double eps) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

std::string run_prefix(const std::string& method, double eps,
                       std::uint64_t seed) {
  return method + "_eps" + format_eps(eps) + "_seed" + std::to_string(seed);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

/// Interval selection rule used by the streaming loop.
struct IntervalPolicy {
  enum class Kind { kAdaptive, kConstant, kSequence } kind = Kind::kConstant;
  double a_star = 0.0, b_star = 0.0;            // kAdaptive
  std::optional<TruncationInterval> constant;   // kConstant
  std::vector<TruncationInterval> sequence;     // kSequence

  TruncationInterval initial(const Prior& prior, RngStream& root) const {
    switch (kind) {
      case Kind::kAdaptive: {
        RngStream sub = root.child("init_interval");
        return initial_interval_from_prior(prior, sub);
      }
      case Kind::kConstant:
        return *constant;
      case Kind::kSequence:
        if (sequence.empty()) throw ConfigError("empty interval sequence");
        return sequence.front();
    }
    throw std::logic_error("unreachable");
  }

  TruncationInterval next(std::size_t t, const ParticleSystem& system,
                          RngStream& root) const {
    switch (kind) {
      case Kind::kAdaptive: {
        RngStream sub = root.child("select", t);
        return thompson_select(system, a_star, b_star, sub);
      }
      case Kind::kConstant:
        return *constant;
      case Kind::kSequence:
        if (t >= sequence.size()) throw ConfigError("interval sequence too short");
        return sequence[t];
    }
    throw std::logic_error("unreachable");
  }
};

void write_summary(const fs::path& path, const ExperimentConfig& cfg,
                   const RunResult& result) {
  json doc;
  doc["method"] = result.method;
  doc["epsilon"] = result.epsilon;
  doc["seed"] = result.seed;
  doc["n"] = result.records_processed;
  doc["N"] = cfg.n_particles;
  doc["true_m"] = cfg.true_m;
  doc["true_c"] = cfg.true_c;
  doc["posterior_mean_m"] = result.post_mean.m;
  doc["posterior_mean_c"] = result.post_mean.c;
  doc["posterior_sd_m"] = result.post_sd.m;
  doc["posterior_sd_c"] = result.post_sd.c;
  doc["weight_underflows"] = result.weight_underflows;
  if (result.base_interval) {
    doc["a_star"] = result.base_interval->first;
    doc["b_star"] = result.base_interval->second;
  }
  doc["config"] = json::parse(cfg.to_json_text());
  open_out(path) << doc.dump(2) << "\n";
}

/// The online loop shared by every streaming method: release one record,
/// assimilate it, log, select the next interval. Estimation only ever sees
/// ReleaseRecord values; the raw draw x never leaves this scope.
RunResult run_stream(const ExperimentConfig& cfg, const std::string& method,
                     const IntervalPolicy& policy, const fs::path& out_dir) {
  cfg.validate();
  fs::create_directories(out_dir);

  const LocationScaleModel model = LocationScaleModel::normal();
  const Prior prior = cfg.prior();
  const Theta true_theta{cfg.true_m, cfg.true_c};
  RngStream root = RngStream::root(cfg.seed);

  RunResult result;
  result.method = method;
  result.epsilon = cfg.epsilon;
  result.seed = cfg.seed;
  result.prefix = run_prefix(method, cfg.epsilon, cfg.seed);
  if (policy.kind == IntervalPolicy::Kind::kAdaptive) {
    result.base_interval = {policy.a_star, policy.b_star};
  }

  auto records_os = open_out(out_dir / (result.prefix + ".records.csv"));
  auto trace_os = open_out(out_dir / (result.prefix + ".trace.csv"));
  auto intervals_os = open_out(out_dir / (result.prefix + ".intervals.csv"));
  records_os << release_record_csv_header() << "\n";
  trace_os << "t,posterior_mean_m,posterior_mean_c,l,r\n";
  intervals_os << "t,l,r\n";
  std::optional<std::ofstream> particles_os;
  if (cfg.particle_dump_every > 0) {
    particles_os = open_out(out_dir / (result.prefix + ".particles.csv"));
    *particles_os << "t,i,m,c,weight\n";
  }

  RngStream init_stream = root.child("smc_init");
  ParticleSystem system = smc_init(prior, cfg.n_particles, init_stream);
  const RejuvenationConfig rejuv = cfg.rejuvenation();

  TruncationInterval interval = policy.initial(prior, root);
  std::size_t interval_selected_at = 0;

  for (std::size_t t = 1; t <= cfg.n_records; ++t) {
    // The interval for record t must predate the draw of x_t.
    if (interval_selected_at != t - 1) {
      throw NumericError("interval selection out of order");
    }
    RngStream data_stream = root.child("data", t);
    const double x_t = model.sample(true_theta, data_stream);
    RngStream release_stream = root.child("release", t);
    const ReleaseRecord rec =
        release(x_t, interval, cfg.epsilon, t, release_stream);
    records_os << release_record_csv_row(rec) << "\n";

    RngStream step_stream = root.child("smc_step", t);
    system = smc_step(system, rec, model, prior, rejuv, step_stream,
                      effective_threads(cfg.threads));

    const Theta mean = posterior_mean(system);
    trace_os << t << ',' << format_full(mean.m) << ',' << format_full(mean.c)
             << ',' << format_full(interval.l()) << ','
             << format_full(interval.r()) << "\n";
    intervals_os << t << ',' << format_full(interval.l()) << ','
                 << format_full(interval.r()) << "\n";
    if (particles_os && t % cfg.particle_dump_every == 0) {
      for (std::size_t i = 0; i < system.size(); ++i) {
        *particles_os << t << ',' << i << ','
                      << format_full(system.particles[i].theta.m) << ','
                      << format_full(system.particles[i].theta.c) << ','
                      << format_full(system.weights[i]) << "\n";
      }
    }

    if (t < cfg.n_records) {
      interval = policy.next(t, system, root);
      interval_selected_at = t;
    }
  }

  result.records_processed = cfg.n_records;
  result.post_mean = posterior_mean(system);
  result.post_sd = posterior_sd(system);
  result.weight_underflows = system.diag.weight_underflows;
  write_summary(out_dir / (result.prefix + ".summary.json"), cfg, result);
  return result;
}

struct AggregateRow {
  std::string method;
  double epsilon;
  std::string metric;
  double median, q1, q3;
};

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t k = static_cast<std::size_t>(h);
  if (k + 1 >= sorted.size()) return sorted.back();
  return sorted[k] + (h - static_cast<double>(k)) * (sorted[k + 1] - sorted[k]);
}

}  // namespace

FimGridResult run_optimize_base(const ExperimentConfig& cfg,
                                const fs::path& out_dir) {
  cfg.validate();
  fs::create_directories(out_dir);
  const LocationScaleModel model = LocationScaleModel::normal();
  RngStream root = RngStream::root(cfg.seed);
  RngStream sub = root.child("optimize_base");
  const FimGridResult result =
      optimize_base_interval(model, cfg.epsilon, cfg.grid(), cfg.fim(),
                             cfg.score_function(), sub,
                             effective_threads(cfg.threads));
  auto os = open_out(out_dir / ("fim_grid_eps" + format_eps(cfg.epsilon) +
                                "_seed" + std::to_string(cfg.seed) + ".csv"));
  write_grid_csv(result, os);
  return result;
}

RunResult run_adaptive_experiment(const ExperimentConfig& cfg,
                                  const fs::path& out_dir) {
  cfg.validate();
  IntervalPolicy policy;
  policy.kind = IntervalPolicy::Kind::kAdaptive;
  if (cfg.a_star) {
    policy.a_star = *cfg.a_star;
    policy.b_star = *cfg.b_star;
  } else {
    const FimGridResult base = run_optimize_base(cfg, out_dir);
    policy.a_star = base.a_star;
    policy.b_star = base.b_star;
  }
  return run_stream(cfg, "adaptive", policy, out_dir);
}

RunResult run_nonadaptive_experiment(const ExperimentConfig& cfg,
                                     const fs::path& out_dir) {
  cfg.validate();
  IntervalPolicy policy;
  policy.kind = IntervalPolicy::Kind::kConstant;
  policy.constant = cfg.fixed_interval();
  return run_stream(cfg, "nonadaptive", policy, out_dir);
}

RunResult run_with_interval_sequence(const ExperimentConfig& cfg,
                                     const std::vector<TruncationInterval>& ivs,
                                     const fs::path& out_dir,
                                     const std::string& method_name) {
  IntervalPolicy policy;
  policy.kind = IntervalPolicy::Kind::kSequence;
  policy.sequence = ivs;
  return run_stream(cfg, method_name, policy, out_dir);
}

RunResult run_batch_experiment(const ExperimentConfig& cfg,
                               const fs::path& out_dir) {
  cfg.validate();
  fs::create_directories(out_dir);
  const LocationScaleModel model = LocationScaleModel::normal();
  const Prior prior = cfg.prior();
  const Theta true_theta{cfg.true_m, cfg.true_c};
  const TruncationInterval interval = cfg.fixed_interval();
  RngStream root = RngStream::root(cfg.seed);

  RunResult result;
  result.method = "batch";
  result.epsilon = cfg.epsilon;
  result.seed = cfg.seed;
  result.prefix = run_prefix("batch", cfg.epsilon, cfg.seed);

  // Identical record-release path (and substream layout) as the streaming
  // runs: with the same seed the batch chain sees the same records as the
  // non-adaptive run.
  std::vector<ReleaseRecord> records;
  records.reserve(cfg.n_records);
  auto records_os = open_out(out_dir / (result.prefix + ".records.csv"));
  records_os << release_record_csv_header() << "\n";
  for (std::size_t t = 1; t <= cfg.n_records; ++t) {
    RngStream data_stream = root.child("data", t);
    const double x_t = model.sample(true_theta, data_stream);
    RngStream release_stream = root.child("release", t);
    records.push_back(release(x_t, interval, cfg.epsilon, t, release_stream));
    records_os << release_record_csv_row(records.back()) << "\n";
  }

  RngStream chain_stream = root.child("batch");
  const std::vector<Theta> samples =
      run_batch_mcmc(records, model, prior, cfg.batch(), chain_stream);

  auto chain_os = open_out(out_dir / (result.prefix + ".chain.csv"));
  chain_os << "iteration,m,c\n";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    chain_os << (cfg.batch_burnin + k + 1) << ',' << format_full(samples[k].m)
             << ',' << format_full(samples[k].c) << "\n";
  }

  double sum_m = 0.0, sum_c = 0.0;
  for (const Theta& th : samples) {
    sum_m += th.m;
    sum_c += th.c;
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  result.post_mean = Theta{sum_m * inv, sum_c * inv};
  double var_m = 0.0, var_c = 0.0;
  for (const Theta& th : samples) {
    var_m += (th.m - result.post_mean.m) * (th.m - result.post_mean.m);
    var_c += (th.c - result.post_mean.c) * (th.c - result.post_mean.c);
  }
  result.post_sd = Theta{std::sqrt(var_m * inv), std::sqrt(var_c * inv)};
  result.records_processed = cfg.n_records;
  write_summary(out_dir / (result.prefix + ".summary.json"), cfg, result);
  return result;
}

double ReplicationSummary::median_abs_err_m(const std::string& method,
                                            double true_m) const {
  std::vector<double> errs;
  for (const auto& row : rows) {
    if (row.method == method && row.ok) {
      errs.push_back(std::abs(row.post_mean.m - true_m));
    }
  }
  std::sort(errs.begin(), errs.end());
  return quantile_sorted(errs, 0.5);
}

ReplicationSummary run_replications(const ExperimentConfig& cfg,
                                    const fs::path& out_dir) {
  cfg.validate();
  fs::create_directories(out_dir / "runs");
  const std::vector<std::string> methods = cfg.method_list();
  const std::size_t reps = cfg.replications;
  RngStream root = RngStream::root(cfg.seed);

  // The base interval is computed once per privacy level and shared.
  ExperimentConfig base_cfg = cfg;
  if (std::find(methods.begin(), methods.end(), "adaptive") != methods.end() &&
      !cfg.a_star) {
    const FimGridResult base = run_optimize_base(cfg, out_dir);
    base_cfg.a_star = base.a_star;
    base_cfg.b_star = base.b_star;
  }

  ReplicationSummary summary;
  summary.rows.resize(methods.size() * reps);
  parallel_for(summary.rows.size(), effective_threads(cfg.threads),
               [&](std::size_t task) {
    const std::size_t mi = task / reps;
    const std::size_t run = task % reps;
    ExperimentConfig run_cfg = base_cfg;
    run_cfg.seed = root.child("replicate", mi, run).key();
    run_cfg.threads = 1;
    run_cfg.particle_dump_every = 0;
    ReplicationRow& row = summary.rows[task];
    row.method = methods[mi];
    row.epsilon = cfg.epsilon;
    row.run = run;
    row.seed = run_cfg.seed;
    try {
      RunResult res;
      if (methods[mi] == "adaptive") {
        res = run_adaptive_experiment(run_cfg, out_dir / "runs");
      } else if (methods[mi] == "nonadaptive") {
        res = run_nonadaptive_experiment(run_cfg, out_dir / "runs");
      } else {
        res = run_batch_experiment(run_cfg, out_dir / "runs");
      }
      row.ok = true;
      row.post_mean = res.post_mean;
      row.post_sd = res.post_sd;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  summary.table_csv = out_dir / "replications.csv";
  auto table_os = open_out(summary.table_csv);
  table_os << "method_id,epsilon,run,seed,ok,mean_m,mean_c,sd_m,sd_c,"
              "abs_err_m,abs_err_c,true_m,true_c\n";
  // method_id column encodes the method by its index; the id->name map is
  // echoed as a comment for human readers and the plotter.
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    table_os << "# method_id " << mi << " = " << methods[mi] << "\n";
  }
  std::ofstream errors_os;
  for (const auto& row : summary.rows) {
    const std::size_t mi = static_cast<std::size_t>(
        std::find(methods.begin(), methods.end(), row.method) -
        methods.begin());
    table_os << mi << ',' << format_full(row.epsilon) << ',' << row.run << ','
             << row.seed << ',' << (row.ok ? 1 : 0) << ','
             << format_full(row.post_mean.m) << ','
             << format_full(row.post_mean.c) << ','
             << format_full(row.post_sd.m) << ',' << format_full(row.post_sd.c)
             << ',' << format_full(std::abs(row.post_mean.m - cfg.true_m))
             << ',' << format_full(std::abs(row.post_mean.c - cfg.true_c))
             << ',' << format_full(cfg.true_m) << ','
             << format_full(cfg.true_c) << "\n";
    if (!row.ok) {
      if (!errors_os.is_open()) {
        errors_os = open_out(out_dir / "replication_failures.txt");
      }
      errors_os << row.method << " run " << row.run << ": " << row.error << "\n";
    }
  }

  summary.aggregate_csv = out_dir / "aggregate.csv";
  auto agg_os = open_out(summary.aggregate_csv);
  agg_os << "method_id,epsilon,metric_id,median,q1,q3\n";
  agg_os << "# metric_id: 0=abs_err_m 1=abs_err_c 2=mean_m 3=mean_c\n";
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (int metric = 0; metric < 4; ++metric) {
      std::vector<double> vals;
      for (const auto& row : summary.rows) {
        if (!row.ok || row.method != methods[mi]) continue;
        switch (metric) {
          case 0: vals.push_back(std::abs(row.post_mean.m - cfg.true_m)); break;
          case 1: vals.push_back(std::abs(row.post_mean.c - cfg.true_c)); break;
          case 2: vals.push_back(row.post_mean.m); break;
          default: vals.push_back(row.post_mean.c); break;
        }
      }
      std::sort(vals.begin(), vals.end());
      agg_os << mi << ',' << format_full(cfg.epsilon) << ',' << metric << ','
             << format_full(quantile_sorted(vals, 0.5)) << ','
             << format_full(quantile_sorted(vals, 0.25)) << ','
             << format_full(quantile_sorted(vals, 0.75)) << "\n";
    }
  }
  return summary;
}

namespace {

struct TraceArtifacts {
  std::string prefix;
  CsvTable trace;
  std::optional<CsvTable> particles;
  std::optional<json> summary;
};

void render_scatter(const TraceArtifacts& art, bool for_m,
                    const fs::path& out_path) {
  const std::string param = for_m ? "m" : "c";
  SvgPlot plot(art.prefix + " posterior particles (" + param + ")", "t", param);

  if (art.particles && !art.particles->rows.empty()) {
    const auto& tab = *art.particles;
    const std::size_t tc = tab.column("t");
    const std::size_t vc = tab.column(param);
    // One point group per dumped step.
    std::map<double, SvgSeries> slices;
    for (const auto& row : tab.rows) {
      slices[row[tc]].x.push_back(row[tc]);
      slices[row[tc]].y.push_back(row[vc]);
    }
    for (const auto& [t, series] : slices) {
      char gid[48];
      std::snprintf(gid, sizeof gid, "slice-t%.0f", t);
      plot.add_points(series, "steelblue", 1.6, gid);
    }
  }

  const std::size_t tc = art.trace.column("t");
  SvgSeries mean_line;
  for (const auto& row : art.trace.rows) {
    mean_line.x.push_back(row[tc]);
    mean_line.y.push_back(row[art.trace.column(
        for_m ? "posterior_mean_m" : "posterior_mean_c")]);
  }
  if (!mean_line.x.empty()) plot.add_line(mean_line, "crimson", 1.5);

  if (for_m) {
    SvgSeries lo, hi;
    const std::size_t lc = art.trace.column("l");
    const std::size_t rc = art.trace.column("r");
    for (const auto& row : art.trace.rows) {
      lo.x.push_back(row[tc]);
      lo.y.push_back(row[lc]);
      hi.x.push_back(row[tc]);
      hi.y.push_back(row[rc]);
    }
    if (!lo.x.empty()) {
      plot.add_line(lo, "dimgray", 1.0, true);
      plot.add_line(hi, "dimgray", 1.0, true);
    }
  }

  if (art.summary) {
    const auto key = for_m ? "true_m" : "true_c";
    if (art.summary->contains(key)) {
      plot.add_hline((*art.summary)[key].get<double>(), "black", false);
    }
  }
  open_out(out_path) << plot.render();
}

}  // namespace

void emit_plots(const fs::path& run_dir, const fs::path& out_dir) {
  if (!fs::exists(run_dir)) throw IoError("no such directory: " + run_dir.string());
  fs::create_directories(out_dir);

  std::vector<fs::path> traces;
  for (const auto& entry : fs::directory_iterator(run_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 10 && name.ends_with(".trace.csv")) {
      traces.push_back(entry.path());
    }
  }
  std::sort(traces.begin(), traces.end());

  for (const auto& trace_path : traces) {
    TraceArtifacts art;
    std::string name = trace_path.filename().string();
    art.prefix = name.substr(0, name.size() - 10);
    art.trace = read_csv(trace_path);
    const fs::path particles = run_dir / (art.prefix + ".particles.csv");
    if (fs::exists(particles)) art.particles = read_csv(particles);
    const fs::path summary = run_dir / (art.prefix + ".summary.json");
    if (fs::exists(summary)) {
      std::ifstream in(summary);
      json doc;
      in >> doc;
      art.summary = doc;
    }
    render_scatter(art, true, out_dir / (art.prefix + ".scatter_m.svg"));
    render_scatter(art, false, out_dir / (art.prefix + ".scatter_c.svg"));
  }

  const fs::path reps = run_dir / "replications.csv";
  if (fs::exists(reps)) {
    const CsvTable tab = read_csv(reps);
    if (tab.rows.empty()) {
      std::cout << "emit_plots: replication table is empty; skipping box plots\n";
      return;
    }
    const std::size_t mid = tab.column("method_id");
    const std::size_t okc = tab.column("ok");
    const std::size_t epsc = tab.column("epsilon");
    for (const std::string param : {"m", "c"}) {
      const std::size_t vc = tab.column("mean_" + param);
      std::map<std::pair<double, double>, std::vector<double>> groups;
      for (const auto& row : tab.rows) {
        if (row[okc] == 0.0) continue;
        groups[{row[mid], row[epsc]}].push_back(row[vc]);
      }
      std::vector<BoxStats> boxes;
      for (auto& [key, vals] : groups) {
        std::sort(vals.begin(), vals.end());
        char label[64];
        std::snprintf(label, sizeof label, "method %d (eps=%g)",
                      static_cast<int>(key.first), key.second);
        boxes.push_back(BoxStats{label, vals.front(),
                                 quantile_sorted(vals, 0.25),
                                 quantile_sorted(vals, 0.5),
                                 quantile_sorted(vals, 0.75), vals.back()});
      }
      std::optional<double> reference;
      const std::size_t truec = tab.column("true_" + param);
      if (!tab.rows.empty()) reference = tab.rows.front()[truec];
      open_out(out_dir / ("boxplot_mean_" + param + ".svg"))
          << render_box_plot("posterior mean of " + param + " across runs",
                             "mean " + param, boxes, reference);
    }
  }
}

}  // namespace dpsmc
