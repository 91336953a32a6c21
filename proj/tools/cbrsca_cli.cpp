// Copyright 2026 The Authors.
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

// Command-line front end. Marshals flags into JSON and calls the shared
// library through the public C interface only.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbrsca.h"

namespace {

using nlohmann::json;

int Fail(cbrsca_status status) {
  std::cerr << "error (" << static_cast<int>(status)
            << "): " << cbrsca_last_error() << "\n";
  return 1;
}

std::string ReadFileOrDie(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(1);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteOrPrint(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(1);
  }
  out << content << "\n";
}

// Shared scenario flags; assembled into the generator options JSON.
struct ScenarioFlags {
  std::string tier = "gaa";
  int grid_width = 10;
  double r_s = 1.0;
  std::vector<int> excluded;
  double region_radius_km = 0.8;
  double density = 75.0;
  int n_nodes = -1;
  int demand_limit = 4;
  double activity_max = 4.0;
  int pa_nodes_per_licensee = 10;
  std::string nodes_csv;
  double center_lat = 0.0;
  double center_lon = 0.0;
};

void AddScenarioFlags(CLI::App* cmd, ScenarioFlags* f) {
  cmd->add_option("--tier", f->tier, "Scenario tier: pa or gaa")
      ->check(CLI::IsMember({"pa", "gaa"}));
  cmd->add_option("--grid-width", f->grid_width,
                  "Tract grid width (pa tier)");
  cmd->add_option("--r-s", f->r_s, "License area radius in tract units (pa)");
  cmd->add_option("--exclude-channel", f->excluded,
                  "Channel removed from the license pool (repeatable)");
  cmd->add_option("--radius", f->region_radius_km,
                  "Deployment region radius in km (gaa)");
  cmd->add_option("--density", f->density, "Node density per km^2 (gaa)");
  cmd->add_option("--n-nodes", f->n_nodes,
                  "Override node count; -1 derives it from density");
  cmd->add_option("--demand-limit", f->demand_limit,
                  "Largest acceptable block length (gaa)");
  cmd->add_option("--activity-max", f->activity_max,
                  "Upper bound of the uniform activity draw (gaa)");
  cmd->add_option("--pa-nodes-per-licensee", f->pa_nodes_per_licensee,
                  "Incumbent transmitters per licensee (gaa)");
  cmd->add_option("--nodes-csv", f->nodes_csv,
                  "Node positions CSV (id,lat,lon) instead of synthetic");
  cmd->add_option("--center-lat", f->center_lat, "CSV projection center");
  cmd->add_option("--center-lon", f->center_lon, "CSV projection center");
}

json ScenarioOptions(const ScenarioFlags& f) {
  json j;
  j["tier"] = f.tier;
  if (f.tier == "pa") {
    j["grid_width"] = f.grid_width;
    j["r_s"] = f.r_s;
    j["excluded_channels"] = f.excluded;
  } else {
    j["region_radius_km"] = f.region_radius_km;
    j["density_per_km2"] = f.density;
    j["n_nodes"] = f.n_nodes;
    j["demand_limit"] = f.demand_limit;
    j["activity_max"] = f.activity_max;
    j["pa_nodes_per_licensee"] = f.pa_nodes_per_licensee;
    if (!f.nodes_csv.empty()) {
      j["nodes_csv"] = f.nodes_csv;
      j["center_lat"] = f.center_lat;
      j["center_lon"] = f.center_lon;
    }
  }
  return j;
}

// Bench/sweep experiment config from flags or a config file.
json BuildConfig(const std::string& config_path, const ScenarioFlags& sf,
                 const std::vector<std::string>& solvers, uint64_t seed,
                 int n_seeds, double lambda, double alpha_bar, double epsilon,
                 const std::string& reward, const std::string& penalty,
                 int trials, bool coex, bool capacity, bool report_runtime) {
  json cfg;
  if (!config_path.empty()) {
    cfg = json::parse(ReadFileOrDie(config_path));
  } else {
    cfg["scenario"] = ScenarioOptions(sf);
    json list = json::array();
    for (const std::string& name : solvers) {
      json s;
      s["name"] = name;
      s["reward"] = reward;
      s["penalty"] = penalty;
      s["lambda"] = lambda;
      s["alpha_bar"] = alpha_bar;
      s["epsilon"] = epsilon;
      s["trials"] = trials;
      if (coex && (name == "gmwis" || name == "mra"))
        s["coexistence"] = true;
      list.push_back(s);
    }
    cfg["solvers"] = list;
  }
  cfg["master_seed"] = seed;
  cfg["n_seeds"] = n_seeds;
  cfg["compute_capacity"] = capacity;
  cfg["report_runtime"] = report_runtime;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-assignment engine for shared-spectrum networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cbrsca_version()));

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate a scenario as JSON");
  ScenarioFlags gen_flags;
  uint64_t gen_seed = 1;
  std::string gen_out;
  AddScenarioFlags(gen, &gen_flags);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output path (- for stdout)");

  // ---- graph ----
  auto* graph_cmd =
      app.add_subcommand("graph", "Build a conflict graph from a scenario");
  std::string graph_scenario_path, graph_kind = "gaa_binary", graph_out;
  std::string graph_reward = "linear", graph_penalty = "interference";
  double graph_alpha_bar = 1.0;
  uint64_t graph_seed = 1;
  graph_cmd->add_option("--scenario", graph_scenario_path,
                        "Scenario JSON path")->required();
  graph_cmd->add_option("--kind", graph_kind,
                        "pa | pa_jobs | gaa_binary | gaa_coex | gaa_nonbinary")
      ->check(CLI::IsMember(
          {"pa", "pa_jobs", "gaa_binary", "gaa_coex", "gaa_nonbinary"}));
  graph_cmd->add_option("--reward", graph_reward,
                        "linear | log | unit | capacity");
  graph_cmd->add_option("--penalty", graph_penalty,
                        "interference | capacity");
  graph_cmd->add_option("--alpha-bar", graph_alpha_bar,
                        "Activity capacity per shared block (gaa_coex)");
  graph_cmd->add_option("--seed", graph_seed, "Grouping seed (gaa_coex)");
  graph_cmd->add_option("--out", graph_out, "Output path (- for stdout)");

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "Run one solver on a graph");
  std::string solve_graph_path, solve_solver = "gmwis", solve_out;
  double solve_lambda = 1.0, solve_epsilon = 0.0;
  int solve_trials = 10000, solve_n_colors = 10;
  uint64_t solve_seed = 1;
  solve_cmd->add_option("--graph", solve_graph_path, "Graph JSON path")
      ->required();
  solve_cmd->add_option("--solver", solve_solver,
                        "gmwis | um | npsmc | mra | random")
      ->check(CLI::IsMember({"gmwis", "um", "npsmc", "mra", "random"}));
  solve_cmd->add_option("--lambda", solve_lambda, "Penalty weight");
  solve_cmd->add_option("--epsilon", solve_epsilon,
                        "Local-search improvement threshold");
  solve_cmd->add_option("--trials", solve_trials, "Random-selection trials");
  solve_cmd->add_option("--n-colors", solve_n_colors,
                        "Color pool size (npsmc)");
  solve_cmd->add_option("--seed", solve_seed, "Solver seed (random)");
  solve_cmd->add_option("--out", solve_out, "Output path (- for stdout)");

  // ---- bench / sweep (shared flags) ----
  auto* bench = app.add_subcommand(
      "bench", "Run an experiment over seed replicates, write CSV");
  auto* sweep = app.add_subcommand(
      "sweep", "Run an experiment per axis value, write CSV");
  struct BenchFlags {
    ScenarioFlags scenario;
    std::string config_path;
    std::vector<std::string> solvers = {"gmwis"};
    uint64_t seed = 1;
    int n_seeds = 30;
    double lambda = 1.0, alpha_bar = 1.0, epsilon = 0.0;
    std::string reward = "linear", penalty = "interference";
    int trials = 10000;
    bool coex = false, capacity = false, report_runtime = false;
    std::string out = "results.csv";
    std::string manifest;
  };
  BenchFlags bf, sf2;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  for (auto [cmd, f] : {std::pair{bench, &bf}, std::pair{sweep, &sf2}}) {
    AddScenarioFlags(cmd, &f->scenario);
    cmd->add_option("--config", f->config_path,
                    "Experiment config JSON (overrides scenario/solver flags)");
    cmd->add_option("--solver", f->solvers,
                    "Solver to run (repeatable): gmwis um npsmc mra random");
    cmd->add_option("--seed", f->seed, "Master seed");
    cmd->add_option("--seeds", f->n_seeds, "Number of scenario replicates");
    cmd->add_option("--lambda", f->lambda, "Penalty weight");
    cmd->add_option("--alpha-bar", f->alpha_bar,
                    "Activity capacity per shared block");
    cmd->add_option("--epsilon", f->epsilon,
                    "Local-search improvement threshold");
    cmd->add_option("--reward", f->reward, "linear | log | unit | capacity")
        ->check(CLI::IsMember({"linear", "log", "unit", "capacity"}));
    cmd->add_option("--penalty", f->penalty, "interference | capacity")
        ->check(CLI::IsMember({"interference", "capacity"}));
    cmd->add_option("--trials", f->trials, "Random-selection trials");
    cmd->add_flag("--coexistence", f->coex,
                  "Enable super-node formation for gmwis/mra");
    cmd->add_flag("--capacity", f->capacity,
                  "Fill the capacity_mbps column");
    cmd->add_flag("--report-runtime", f->report_runtime,
                  "Fill runtime_ms (non-deterministic output)");
    cmd->add_option("--out", f->out, "CSV output path");
    cmd->add_option("--manifest", f->manifest,
                    "Manifest path (default: <out>.manifest.json)");
  }
  sweep->add_option("--axis", sweep_axis,
                    "m | r_s | radius | density | lambda | alpha_bar | "
                    "epsilon | trials")
      ->required();
  sweep->add_option("--values", sweep_values, "Axis values")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    cbrsca_scenario* s = nullptr;
    cbrsca_status st = cbrsca_scenario_generate(
        ScenarioOptions(gen_flags).dump().c_str(), gen_seed, &s);
    if (st != CBRSCA_OK) return Fail(st);
    char* text = nullptr;
    st = cbrsca_scenario_to_json(s, &text);
    cbrsca_scenario_free(s);
    if (st != CBRSCA_OK) return Fail(st);
    WriteOrPrint(gen_out, text);
    cbrsca_string_free(text);
    return 0;
  }

  if (graph_cmd->parsed()) {
    cbrsca_scenario* s = nullptr;
    cbrsca_status st = cbrsca_scenario_from_json(
        ReadFileOrDie(graph_scenario_path).c_str(), &s);
    if (st != CBRSCA_OK) return Fail(st);
    json opt;
    opt["kind"] = graph_kind;
    opt["reward"] = graph_reward;
    opt["penalty"] = graph_penalty;
    opt["alpha_bar"] = graph_alpha_bar;
    opt["seed"] = graph_seed;
    cbrsca_graph* g = nullptr;
    st = cbrsca_graph_build(s, opt.dump().c_str(), &g);
    cbrsca_scenario_free(s);
    if (st != CBRSCA_OK) return Fail(st);
    char* text = nullptr;
    st = cbrsca_graph_to_json(g, &text);
    cbrsca_graph_free(g);
    if (st != CBRSCA_OK) return Fail(st);
    WriteOrPrint(graph_out, text);
    cbrsca_string_free(text);
    return 0;
  }

  if (solve_cmd->parsed()) {
    cbrsca_graph* g = nullptr;
    cbrsca_status st =
        cbrsca_graph_from_json(ReadFileOrDie(solve_graph_path).c_str(), &g);
    if (st != CBRSCA_OK) return Fail(st);
    json opt;
    opt["solver"] = solve_solver;
    opt["lambda"] = solve_lambda;
    opt["epsilon"] = solve_epsilon;
    opt["trials"] = solve_trials;
    opt["n_colors"] = solve_n_colors;
    opt["seed"] = solve_seed;
    cbrsca_solution* sol = nullptr;
    st = cbrsca_solve(g, opt.dump().c_str(), &sol);
    cbrsca_graph_free(g);
    if (st != CBRSCA_OK) return Fail(st);
    char* text = nullptr;
    st = cbrsca_solution_to_json(sol, &text);
    cbrsca_solution_free(sol);
    if (st != CBRSCA_OK) return Fail(st);
    WriteOrPrint(solve_out, text);
    cbrsca_string_free(text);
    return 0;
  }

  const bool is_sweep = sweep->parsed();
  BenchFlags& f = is_sweep ? sf2 : bf;
  json cfg = BuildConfig(f.config_path, f.scenario, f.solvers, f.seed,
                         f.n_seeds, f.lambda, f.alpha_bar, f.epsilon, f.reward,
                         f.penalty, f.trials, f.coex, f.capacity,
                         f.report_runtime);
  std::string manifest =
      f.manifest.empty() ? f.out + ".manifest.json" : f.manifest;
  cbrsca_status st;
  if (is_sweep) {
    st = cbrsca_sweep_run(cfg.dump().c_str(), sweep_axis.c_str(),
                          sweep_values.data(), sweep_values.size(),
                          f.out.c_str(), manifest.c_str());
  } else {
    st = cbrsca_bench_run(cfg.dump().c_str(), f.out.c_str(), manifest.c_str());
  }
  if (st != CBRSCA_OK) return Fail(st);
  std::cout << "wrote " << f.out << " and " << manifest << "\n";
  return 0;
}
