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

#ifndef CBRSCA_HARNESS_HPP_
#define CBRSCA_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cbrsca/json_io.hpp"
#include "cbrsca/objective.hpp"
#include "cbrsca/solve.hpp"

namespace cbrsca {

// One solver invocation inside an experiment.
struct SolverSpec {
  std::string name = "gmwis";  // gmwis | um | npsmc | mra | random
  RewardKind reward = RewardKind::kLinear;
  PenaltyKind penalty = PenaltyKind::kInterference;
  double lambda = 1.0;
  double epsilon = 0.0;
  double alpha_bar = 1.0;
  int trials = 10000;
  bool coexistence = false;  // super-node formation before gmwis/mra

  std::string Label() const;
  void Validate() const;
};

struct ScenarioSpec {
  std::string tier = "gaa";  // "pa" | "gaa"
  // Priority tier.
  int grid_width = 10;
  double r_s = 1.0;  // license radius in tract units
  int n_colors = kPaChannelCount;
  std::vector<int> excluded_channels;
  // General-access tier.
  GaaGenConfig gaa;
  std::string nodes_csv;  // when set, nodes come from this file
  double center_lat = 0.0;
  double center_lon = 0.0;

  void Validate() const;
};

struct ExperimentConfig {
  ScenarioSpec scenario;
  std::vector<SolverSpec> solvers;
  uint64_t master_seed = 1;
  int n_seeds = 30;
  bool compute_capacity = false;  // adds the capacity_mbps column content
  bool report_runtime = false;    // fills runtime_ms (breaks byte-stability)
  CapacityParams capacity;

  void Validate() const;
};

ExperimentConfig ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const ExperimentConfig& c);

struct Metrics {
  double p = 0.0;   // served share, priority tier
  double p1 = 0.0;  // served node share, general-access tier
  double p2 = 0.0;  // assigned channels over total demanded
  double utility = 0.0;
  double total_interference_w = 0.0;
  double capacity_mbps = 0.0;
};

Metrics ComputePaMetrics(const Solution& sol, const PAScenario& s);
Metrics ComputeGaaMetrics(const Solution& sol, const GaaScenario& s,
                          bool with_capacity, const CapacityParams& cap);

struct ResultRow {
  std::string seed_label;  // seed index or "mean"
  double axis_value = 0.0;
  std::string solver;
  int n_nodes = 0;
  int n_vertices = 0;
  int64_t n_edges = 0;
  Metrics metrics;
  double runtime_ms = 0.0;
};

// Runs every solver over n_seeds scenario replicates (per-seed scenarios are
// shared across solvers) and appends one mean row per solver.
std::vector<ResultRow> RunExperiment(const ExperimentConfig& cfg,
                                     double axis_value = 0.0);

// Valid sweep axes: m, r_s, radius, density, lambda, alpha_bar, epsilon,
// trials. Solver-level axes apply to every solver in the config.
std::vector<ResultRow> Sweep(const ExperimentConfig& cfg,
                             const std::string& axis,
                             const std::vector<double>& values);

std::string RowsToCsv(const std::vector<ResultRow>& rows);

// Writes the CSV and a JSON manifest (config echo, version, row count,
// wall-clock) next to it.
void WriteBenchOutputs(const ExperimentConfig& cfg,
                       const std::vector<ResultRow>& rows,
                       const std::string& csv_path,
                       const std::string& manifest_path);

}  // namespace cbrsca

#endif  // CBRSCA_HARNESS_HPP_
