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

#include "dpsmc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpsmc/errors.hpp"

namespace dpsmc {

using nlohmann::json;

namespace {

void assign(ExperimentConfig& cfg, const std::string& key, const json& v) {
  try {
    if (key == "epsilon") cfg.epsilon = v.get<double>();
    else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (key == "n") cfg.n_records = v.get<std::size_t>();
    else if (key == "N") cfg.n_particles = v.get<std::size_t>();
    else if (key == "true_m") cfg.true_m = v.get<double>();
    else if (key == "true_c") cfg.true_c = v.get<double>();
    else if (key == "prior_mu_mean") cfg.prior_mu_mean = v.get<double>();
    else if (key == "prior_mu_var") cfg.prior_mu_var = v.get<double>();
    else if (key == "prior_sigma2_shape") cfg.prior_sigma2_shape = v.get<double>();
    else if (key == "prior_sigma2_scale") cfg.prior_sigma2_scale = v.get<double>();
    else if (key == "M") cfg.outer_samples = v.get<std::size_t>();
    else if (key == "Ng") cfg.inner_samples = v.get<std::size_t>();
    else if (key == "grid_a_min") cfg.grid_a_min = v.get<double>();
    else if (key == "grid_a_max") cfg.grid_a_max = v.get<double>();
    else if (key == "grid_b_min") cfg.grid_b_min = v.get<double>();
    else if (key == "grid_b_max") cfg.grid_b_max = v.get<double>();
    else if (key == "grid_resolution") cfg.grid_resolution = v.get<std::size_t>();
    else if (key == "score") cfg.score = v.get<std::string>();
    else if (key == "a_star") {
      if (v.is_null()) cfg.a_star.reset();
      else cfg.a_star = v.get<double>();
    } else if (key == "b_star") {
      if (v.is_null()) cfg.b_star.reset();
      else cfg.b_star = v.get<double>();
    } else if (key == "fixed_l") {
      if (v.is_null()) cfg.fixed_l.reset();
      else cfg.fixed_l = v.get<double>();
    } else if (key == "fixed_r") {
      if (v.is_null()) cfg.fixed_r.reset();
      else cfg.fixed_r = v.get<double>();
    }
    else if (key == "rejuv_subset") cfg.rejuv_subset = v.get<std::size_t>();
    else if (key == "x_proposal_sd") cfg.x_proposal_sd = v.get<double>();
    else if (key == "theta_update") cfg.theta_update = v.get<std::string>();
    else if (key == "rw_step_m") cfg.rw_step_m = v.get<double>();
    else if (key == "rw_step_c") cfg.rw_step_c = v.get<double>();
    else if (key == "batch_iterations") cfg.batch_iterations = v.get<std::size_t>();
    else if (key == "batch_burnin") cfg.batch_burnin = v.get<std::size_t>();
    else if (key == "R") cfg.replications = v.get<std::size_t>();
    else if (key == "methods") cfg.methods = v.get<std::string>();
    else if (key == "P" || key == "particle_dump_every")
      cfg.particle_dump_every = v.get<std::size_t>();
    else if (key == "threads") cfg.threads = v.get<unsigned>();
    else throw ConfigError("unknown config key: " + key);
  } catch (const json::exception& e) {
    throw ConfigError("bad value for config key '" + key + "': " + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (n_particles < 2) throw ConfigError("N must be >= 2");
  if (replications < 1) throw ConfigError("R must be >= 1");
  if (!(true_c > 0.0)) throw ConfigError("true_c must be > 0");
  if (outer_samples < 1) throw ConfigError("M must be >= 1");
  if (inner_samples < 2) throw ConfigError("Ng must be >= 2");
  if (theta_update != "gibbs" && theta_update != "random_walk") {
    throw ConfigError("theta_update must be 'gibbs' or 'random_walk'");
  }
  if (a_star.has_value() != b_star.has_value()) {
    throw ConfigError("a_star and b_star must be given together");
  }
  if (a_star && !(*a_star < *b_star)) throw ConfigError("need a_star < b_star");
  if (fixed_l.has_value() != fixed_r.has_value()) {
    throw ConfigError("fixed_l and fixed_r must be given together");
  }
  if (fixed_l && !(*fixed_l < *fixed_r)) throw ConfigError("need fixed_l < fixed_r");
  if (batch_iterations <= batch_burnin) {
    throw ConfigError("batch_iterations must exceed batch_burnin");
  }
  try {
    prior();
    grid();
    score_function();
    method_list();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::apply_paper_scale() {
  n_records = 1000;
  n_particles = 1000;
  outer_samples = 1000;
  inner_samples = 10000;
  grid_a_min = grid_b_min = -3.0;
  grid_a_max = grid_b_max = 3.0;
  grid_resolution = 50;
}

Prior ExperimentConfig::prior() const {
  return Prior::make(prior_mu_mean, prior_mu_var, prior_sigma2_shape,
                     prior_sigma2_scale);
}

GridSpec ExperimentConfig::grid() const {
  return GridSpec(grid_a_min, grid_a_max, grid_b_min, grid_b_max,
                  grid_resolution);
}

FimConfig ExperimentConfig::fim() const {
  return FimConfig{outer_samples, inner_samples};
}

ScoreFunction ExperimentConfig::score_function() const {
  if (score == "trace") return ScoreFunction::trace();
  if (score.rfind("entry", 0) == 0 && score.size() == 7) {
    return ScoreFunction::entry(score[5] - '0', score[6] - '0');
  }
  if (score.rfind("weighted:", 0) == 0) {
    std::stringstream ss(score.substr(9));
    double w1, w2;
    char comma;
    if (ss >> w1 >> comma >> w2 && comma == ',') {
      return ScoreFunction::weighted_diag(w1, w2);
    }
  }
  throw ConfigError("unrecognized score: '" + score +
                    "' (expected trace, entryIJ, or weighted:w1,w2)");
}

RejuvenationConfig ExperimentConfig::rejuvenation() const {
  RejuvenationConfig r;
  r.subset_size = rejuv_subset;
  r.x_proposal_sd = x_proposal_sd;
  r.theta_update = theta_update == "gibbs"
                       ? RejuvenationConfig::ThetaUpdate::kGibbs
                       : RejuvenationConfig::ThetaUpdate::kRandomWalk;
  r.rw_step_m = rw_step_m;
  r.rw_step_c = rw_step_c;
  return r;
}

BatchMcmcConfig ExperimentConfig::batch() const {
  BatchMcmcConfig b;
  b.iterations = batch_iterations;
  b.burn_in = batch_burnin;
  b.move = rejuvenation();
  b.move.subset_size = 0;  // full sweeps for the batch chain
  return b;
}

TruncationInterval ExperimentConfig::fixed_interval() const {
  if (fixed_l) return TruncationInterval(*fixed_l, *fixed_r);
  return TruncationInterval(true_m - 10.0 * true_c, true_m + 10.0 * true_c);
}

std::vector<std::string> ExperimentConfig::method_list() const {
  std::vector<std::string> out;
  std::stringstream ss(methods);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item != "adaptive" && item != "nonadaptive" && item != "batch") {
      throw ConfigError("unknown method: " + item);
    }
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("methods must name at least one method");
  return out;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) assign(cfg, key, value);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
  json doc;
  doc["epsilon"] = epsilon;
  doc["seed"] = seed;
  doc["n"] = n_records;
  doc["N"] = n_particles;
  doc["true_m"] = true_m;
  doc["true_c"] = true_c;
  doc["prior_mu_mean"] = prior_mu_mean;
  doc["prior_mu_var"] = prior_mu_var;
  doc["prior_sigma2_shape"] = prior_sigma2_shape;
  doc["prior_sigma2_scale"] = prior_sigma2_scale;
  doc["M"] = outer_samples;
  doc["Ng"] = inner_samples;
  doc["grid_a_min"] = grid_a_min;
  doc["grid_a_max"] = grid_a_max;
  doc["grid_b_min"] = grid_b_min;
  doc["grid_b_max"] = grid_b_max;
  doc["grid_resolution"] = grid_resolution;
  doc["score"] = score;
  doc["a_star"] = a_star ? json(*a_star) : json();
  doc["b_star"] = b_star ? json(*b_star) : json();
  doc["fixed_l"] = fixed_l ? json(*fixed_l) : json();
  doc["fixed_r"] = fixed_r ? json(*fixed_r) : json();
  doc["rejuv_subset"] = rejuv_subset;
  doc["x_proposal_sd"] = x_proposal_sd;
  doc["theta_update"] = theta_update;
  doc["rw_step_m"] = rw_step_m;
  doc["rw_step_c"] = rw_step_c;
  doc["batch_iterations"] = batch_iterations;
  doc["batch_burnin"] = batch_burnin;
  doc["R"] = replications;
  doc["methods"] = methods;
  doc["particle_dump_every"] = particle_dump_every;
  doc["threads"] = threads;
  return doc.dump(2);
}

void ExperimentConfig::set_key(const std::string& key,
                               const std::string& value) {
  json v;
  try {
    v = json::parse(value);
  } catch (const json::exception&) {
    v = value;  // bare string
  }
  assign(*this, key, v);
}

}  // namespace dpsmc
