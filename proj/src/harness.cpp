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

#include "cbrsca/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "cbrsca/coexist.hpp"
#include "cbrsca/rng.hpp"

namespace cbrsca {

using nlohmann::json;

namespace {

// Seed streams per master seed: scenario draws, coexistence grouping, and
// random-selection trials each get an independent stream so adding one use
// never shifts another.
enum SeedStream : uint64_t {
  kScenarioStream = 0,
  kCoexStream = 1,
  kRandomStream = 2,
};

const std::set<std::string>& SolverNames() {
  static const std::set<std::string> names = {"gmwis", "um", "npsmc", "mra",
                                              "random"};
  return names;
}

}  // namespace

std::string SolverSpec::Label() const {
  std::string label = name;
  if (name == "gmwis" || name == "mra") {
    label += "-" + RewardKindName(reward);
    if (coexistence) label += "-coex";
  } else if (name == "um" || name == "random") {
    label += "-" + RewardKindName(reward) + "-" + PenaltyKindName(penalty);
  }
  return label;
}

void SolverSpec::Validate() const {
  if (SolverNames().count(name) == 0)
    throw std::invalid_argument("unknown solver: " + name);
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  if (!(epsilon >= 0)) throw std::invalid_argument("epsilon must be >= 0");
  if (!(alpha_bar > 0)) throw std::invalid_argument("alpha_bar must be > 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (coexistence && name != "gmwis" && name != "mra")
    throw std::invalid_argument("coexistence applies to gmwis/mra only");
}

void ScenarioSpec::Validate() const {
  if (tier != "pa" && tier != "gaa")
    throw std::invalid_argument("tier must be pa or gaa");
  if (tier == "pa") {
    if (grid_width < 1) throw std::invalid_argument("grid_width must be >= 1");
    if (!(r_s > 0)) throw std::invalid_argument("r_s must be > 0");
    if (n_colors < 1 || n_colors > kPaChannelCount)
      throw std::invalid_argument("n_colors must be in 1..10");
    for (int c : excluded_channels)
      if (c < 1 || c > kPaChannelCount)
        throw std::invalid_argument("excluded channel out of 1..10");
  } else {
    gaa.Validate();
  }
}

void ExperimentConfig::Validate() const {
  scenario.Validate();
  if (solvers.empty()) throw std::invalid_argument("no solvers configured");
  std::set<std::string> labels;
  for (const SolverSpec& s : solvers) {
    s.Validate();
    if (scenario.tier == "pa" && s.name != "gmwis" && s.name != "npsmc")
      throw std::invalid_argument("priority tier supports gmwis and npsmc");
    if (scenario.tier == "gaa" && s.name == "npsmc")
      throw std::invalid_argument("npsmc applies to the priority tier");
    if (!labels.insert(s.Label()).second)
      throw std::invalid_argument("duplicate solver label: " + s.Label());
  }
  if (n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
}

ExperimentConfig ConfigFromJson(const json& j) {
  ExperimentConfig cfg;
  const json& sc = j.at("scenario");
  cfg.scenario.tier = sc.value("tier", std::string("gaa"));
  if (cfg.scenario.tier == "pa") {
    cfg.scenario.grid_width = sc.value("grid_width", cfg.scenario.grid_width);
    cfg.scenario.r_s = sc.value("r_s", cfg.scenario.r_s);
    cfg.scenario.n_colors = sc.value("n_colors", cfg.scenario.n_colors);
    cfg.scenario.excluded_channels = sc.value(
        "excluded_channels", cfg.scenario.excluded_channels);
  } else {
    GaaGenConfig& g = cfg.scenario.gaa;
    g.region_radius_km = sc.value("region_radius_km", g.region_radius_km);
    g.density_per_km2 = sc.value("density_per_km2", g.density_per_km2);
    g.n_nodes = sc.value("n_nodes", g.n_nodes);
    g.demand_limit = sc.value("demand_limit", g.demand_limit);
    g.activity_max = sc.value("activity_max", g.activity_max);
    g.pa_nodes_per_licensee =
        sc.value("pa_nodes_per_licensee", g.pa_nodes_per_licensee);
    if (sc.contains("licensee_blocks")) {
      g.licensee_blocks.clear();
      for (const json& b : sc.at("licensee_blocks"))
        g.licensee_blocks.push_back(
            ChannelBlock{b.at("lo").get<int>(), b.at("len").get<int>()});
    }
    if (sc.contains("radio")) g.radio = RadioParamsFromJson(sc.at("radio"));
    cfg.scenario.nodes_csv = sc.value("nodes_csv", std::string());
    cfg.scenario.center_lat = sc.value("center_lat", 0.0);
    cfg.scenario.center_lon = sc.value("center_lon", 0.0);
  }

  for (const json& sj : j.at("solvers")) {
    SolverSpec s;
    s.name = sj.at("name").get<std::string>();
    s.reward = ParseRewardKind(sj.value("reward", std::string("linear")));
    s.penalty =
        ParsePenaltyKind(sj.value("penalty", std::string("interference")));
    s.lambda = sj.value("lambda", s.lambda);
    s.epsilon = sj.value("epsilon", s.epsilon);
    s.alpha_bar = sj.value("alpha_bar", s.alpha_bar);
    s.trials = sj.value("trials", s.trials);
    s.coexistence = sj.value("coexistence", false);
    cfg.solvers.push_back(s);
  }
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.n_seeds = j.value("n_seeds", cfg.n_seeds);
  cfg.compute_capacity = j.value("compute_capacity", false);
  cfg.report_runtime = j.value("report_runtime", false);
  if (j.contains("capacity")) {
    const json& cj = j.at("capacity");
    cfg.capacity.noise_density_w_per_hz =
        cj.value("noise_density_w_per_hz", cfg.capacity.noise_density_w_per_hz);
    cfg.capacity.channel_bandwidth_hz =
        cj.value("channel_bandwidth_hz", cfg.capacity.channel_bandwidth_hz);
    cfg.capacity.quadrature_angles =
        cj.value("quadrature_angles", cfg.capacity.quadrature_angles);
    cfg.capacity.quadrature_radii =
        cj.value("quadrature_radii", cfg.capacity.quadrature_radii);
  }
  cfg.Validate();
  return cfg;
}

json ConfigToJson(const ExperimentConfig& cfg) {
  json sc;
  sc["tier"] = cfg.scenario.tier;
  if (cfg.scenario.tier == "pa") {
    sc["grid_width"] = cfg.scenario.grid_width;
    sc["r_s"] = cfg.scenario.r_s;
    sc["n_colors"] = cfg.scenario.n_colors;
    sc["excluded_channels"] = cfg.scenario.excluded_channels;
  } else {
    const GaaGenConfig& g = cfg.scenario.gaa;
    sc["region_radius_km"] = g.region_radius_km;
    sc["density_per_km2"] = g.density_per_km2;
    sc["n_nodes"] = g.n_nodes;
    sc["demand_limit"] = g.demand_limit;
    sc["activity_max"] = g.activity_max;
    sc["pa_nodes_per_licensee"] = g.pa_nodes_per_licensee;
    json blocks = json::array();
    for (const ChannelBlock& b : g.licensee_blocks)
      blocks.push_back(json{{"lo", b.lo}, {"len", b.len}});
    sc["licensee_blocks"] = std::move(blocks);
    sc["radio"] = RadioParamsToJson(g.radio);
    if (!cfg.scenario.nodes_csv.empty()) {
      sc["nodes_csv"] = cfg.scenario.nodes_csv;
      sc["center_lat"] = cfg.scenario.center_lat;
      sc["center_lon"] = cfg.scenario.center_lon;
    }
  }
  json solvers = json::array();
  for (const SolverSpec& s : cfg.solvers)
    solvers.push_back(json{{"name", s.name},
                           {"reward", RewardKindName(s.reward)},
                           {"penalty", PenaltyKindName(s.penalty)},
                           {"lambda", s.lambda},
                           {"epsilon", s.epsilon},
                           {"alpha_bar", s.alpha_bar},
                           {"trials", s.trials},
                           {"coexistence", s.coexistence}});
  return json{{"scenario", std::move(sc)},
              {"solvers", std::move(solvers)},
              {"master_seed", cfg.master_seed},
              {"n_seeds", cfg.n_seeds},
              {"compute_capacity", cfg.compute_capacity},
              {"report_runtime", cfg.report_runtime},
              {"capacity",
               json{{"noise_density_w_per_hz",
                     cfg.capacity.noise_density_w_per_hz},
                    {"channel_bandwidth_hz", cfg.capacity.channel_bandwidth_hz},
                    {"quadrature_angles", cfg.capacity.quadrature_angles},
                    {"quadrature_radii", cfg.capacity.quadrature_radii}}}};
}

Metrics ComputePaMetrics(const Solution& sol, const PAScenario& s) {
  Metrics m;
  if (s.areas.empty()) return m;
  m.p = static_cast<double>(sol.per_node.size()) /
        static_cast<double>(s.areas.size());
  m.utility = sol.objective;
  return m;
}

Metrics ComputeGaaMetrics(const Solution& sol, const GaaScenario& s,
                          bool with_capacity, const CapacityParams& cap) {
  Metrics m;
  m.utility = sol.objective;
  if (s.nodes.empty()) return m;

  int64_t demand_total = 0;
  for (const GaaNode& n : s.nodes) {
    int top = 0;
    for (int d : n.demand_set) top = std::max(top, d);
    demand_total += top;
  }
  int64_t assigned = 0;
  for (const auto& [id, block] : sol.per_node) {
    (void)id;
    assigned += block.len;
  }
  m.p1 = static_cast<double>(sol.per_node.size()) /
         static_cast<double>(s.nodes.size());
  m.p2 = demand_total > 0
             ? static_cast<double>(assigned) / static_cast<double>(demand_total)
             : 0.0;

  // Raw co-channel interference among served nodes: watts at the victim
  // scaled by the number of shared channels, both directions counted.
  for (const auto& [vid, vblock] : sol.per_node) {
    const GaaNode& victim = s.NodeById(vid);
    for (const auto& [sid, sblock] : sol.per_node) {
      if (vid == sid) continue;
      int overlap = vblock.Overlap(sblock);
      if (overlap == 0) continue;
      const GaaNode& src = s.NodeById(sid);
      if (ClassifyConflict(victim, src) == ConflictClass::kNone) continue;
      double watts = DbmToWatts(ReceivedPowerDbm(
          src.params.tx_power_dbm, PlanarDistanceKm(src.pos, victim.pos),
          src.params));
      m.total_interference_w += watts * overlap;
    }
  }

  if (with_capacity) {
    // Interference-blind capacity of the assignment: per-node Shannon rate
    // over its service disk times assigned channels.
    for (const auto& [id, block] : sol.per_node)
      m.capacity_mbps += CapacityMbps(s.NodeById(id), block.len, cap);
  }
  return m;
}

namespace {

struct SeedRun {
  ScenarioDoc scenario;
  // Lazily built graphs shared by the solvers of one seed.
  ConflictGraph pa_graph;
  bool pa_graph_ready = false;
  ConflictGraph pa_job_graph;
  bool pa_job_graph_ready = false;
  ConflictGraph gaa_binary;
  bool gaa_binary_ready = false;
  std::map<std::pair<int, int>, ConflictGraph> utility;  // (reward, penalty)
  std::map<double, ConflictGraph> coex;                  // by alpha_bar
};

ChannelSet ExcludedSet(const std::vector<int>& channels) {
  ChannelSet s;
  for (int c : channels) s.Insert(c);
  return s;
}

const ConflictGraph& GetUtilityGraph(SeedRun& run, const SolverSpec& spec,
                                     const ExperimentConfig& cfg) {
  std::pair<int, int> key{static_cast<int>(spec.reward),
                          static_cast<int>(spec.penalty)};
  auto it = run.utility.find(key);
  if (it != run.utility.end()) return it->second;
  UtilityGraphOptions opt;
  opt.reward = spec.reward;
  opt.penalty = spec.penalty;
  opt.cap = cfg.capacity;
  ConflictGraph g = BuildUtilityGraph(run.scenario.gaa, opt);
  return run.utility.emplace(key, std::move(g)).first->second;
}

const ConflictGraph& GetCoexGraph(SeedRun& run, double alpha_bar,
                                  uint64_t coex_seed) {
  auto it = run.coex.find(alpha_bar);
  if (it != run.coex.end()) return it->second;
  std::vector<Vertex> supers =
      FormAllSuperNodes(run.scenario.gaa, alpha_bar, coex_seed);
  ConflictGraph g = AugmentCoexistence(run.gaa_binary, supers);
  return run.coex.emplace(alpha_bar, std::move(g)).first->second;
}

ResultRow SolveOne(SeedRun& run, const SolverSpec& spec,
                   const ExperimentConfig& cfg, uint64_t seed_index) {
  ResultRow row;
  row.solver = spec.Label();

  Solution sol;
  const ConflictGraph* graph = nullptr;
  Metrics metrics;

  if (cfg.scenario.tier == "pa") {
    const PAScenario& s = run.scenario.pa;
    row.n_nodes = static_cast<int>(s.areas.size());
    if (spec.name == "gmwis") {
      if (!run.pa_graph_ready) {
        run.pa_graph = BuildPaGraph(s);
        run.pa_graph_ready = true;
      }
      graph = &run.pa_graph;
      std::vector<double> weights(graph->VertexCount(), 1.0);
      sol = Gmwis(*graph, weights);
      if (!VerifySelection(*graph, sol.selected,
                           FeasibilityMode::kIndependent))
        throw std::logic_error("infeasible gmwis selection");
    } else {  // npsmc
      if (!run.pa_job_graph_ready) {
        run.pa_job_graph = BuildPaJobGraph(s);
        run.pa_job_graph_ready = true;
      }
      graph = &run.pa_job_graph;
      std::vector<int> demands;
      for (const ServiceArea& a : s.areas) demands.push_back(a.n_pals);
      sol = Npsmc(*graph, demands, cfg.scenario.n_colors);
    }
    metrics = ComputePaMetrics(sol, s);
  } else {
    const GaaScenario& s = run.scenario.gaa;
    row.n_nodes = static_cast<int>(s.nodes.size());
    if (spec.name == "gmwis" || spec.name == "mra") {
      if (!run.gaa_binary_ready) {
        run.gaa_binary = BuildGaaBinaryGraph(s);
        run.gaa_binary_ready = true;
      }
      const ConflictGraph* base = &run.gaa_binary;
      if (spec.coexistence)
        base = &GetCoexGraph(
            run, spec.alpha_bar,
            DeriveSeed(cfg.master_seed, kCoexStream, seed_index));
      // Rewards are assigned on a copy so solvers with different reward
      // kinds can share the cached structure.
      ConflictGraph g = *base;
      for (Vertex& v : g.vertices)
        v.reward = RewardValue(v, spec.reward, s, cfg.capacity);
      if (spec.name == "gmwis") {
        sol = Gmwis(g, GmwisWeights(g, spec.lambda));
      } else {
        sol = Mra(g);
      }
      if (!VerifySelection(g, sol.selected, FeasibilityMode::kIndependent))
        throw std::logic_error("infeasible selection");
      metrics = ComputeGaaMetrics(sol, s, cfg.compute_capacity, cfg.capacity);
      row.n_vertices = g.VertexCount();
      row.n_edges = g.EdgeCount();
      row.metrics = metrics;
      row.runtime_ms = sol.stats.runtime_ms;
      return row;
    }
    const ConflictGraph& g = GetUtilityGraph(run, spec, cfg);
    if (spec.name == "um") {
      sol = UtilityMax(g, spec.lambda, spec.epsilon);
    } else {  // random
      sol = RandomSelect(g, spec.lambda, spec.trials,
                         DeriveSeed(cfg.master_seed, kRandomStream,
                                    seed_index));
    }
    if (!VerifySelection(g, sol.selected, FeasibilityMode::kClusterFeasible))
      throw std::logic_error("infeasible selection");
    metrics = ComputeGaaMetrics(sol, s, cfg.compute_capacity, cfg.capacity);
    graph = &g;
  }

  if (graph != nullptr) {
    row.n_vertices = graph->VertexCount();
    row.n_edges = graph->EdgeCount();
  }
  row.metrics = metrics;
  row.runtime_ms = sol.stats.runtime_ms;
  return row;
}

}  // namespace

std::vector<ResultRow> RunExperiment(const ExperimentConfig& cfg,
                                     double axis_value) {
  cfg.Validate();
  std::vector<ResultRow> rows;
  std::map<std::string, std::vector<ResultRow>> by_solver;

  for (int k = 0; k < cfg.n_seeds; ++k) {
    uint64_t scenario_seed =
        DeriveSeed(cfg.master_seed, kScenarioStream, static_cast<uint64_t>(k));
    SeedRun run;
    bool generated = false;
    try {
      if (cfg.scenario.tier == "pa") {
        run.scenario.tier = ScenarioDoc::Tier::kPa;
        run.scenario.pa = GeneratePaScenario(
            cfg.scenario.grid_width, cfg.scenario.r_s, scenario_seed,
            ExcludedSet(cfg.scenario.excluded_channels));
      } else {
        run.scenario.tier = ScenarioDoc::Tier::kGaa;
        run.scenario.gaa =
            cfg.scenario.nodes_csv.empty()
                ? GenerateGaaScenario(cfg.scenario.gaa, scenario_seed)
                : GaaScenarioFromCsv(cfg.scenario.nodes_csv,
                                     cfg.scenario.center_lat,
                                     cfg.scenario.center_lon, cfg.scenario.gaa,
                                     scenario_seed);
      }
      generated = true;
    } catch (const std::exception&) {
      // A failed draw yields a skipped row, never a crash.
      ResultRow skip;
      skip.seed_label = std::to_string(k);
      skip.axis_value = axis_value;
      skip.solver = "skipped";
      rows.push_back(skip);
    }
    if (!generated) continue;

    for (const SolverSpec& spec : cfg.solvers) {
      ResultRow row =
          SolveOne(run, spec, cfg, static_cast<uint64_t>(k));
      row.seed_label = std::to_string(k);
      row.axis_value = axis_value;
      rows.push_back(row);
      by_solver[row.solver].push_back(row);
    }
  }

  for (const SolverSpec& spec : cfg.solvers) {
    const std::vector<ResultRow>& group = by_solver[spec.Label()];
    if (group.empty()) continue;
    ResultRow mean;
    mean.seed_label = "mean";
    mean.axis_value = axis_value;
    mean.solver = spec.Label();
    double n = static_cast<double>(group.size());
    double edges = 0.0;
    for (const ResultRow& r : group) {
      mean.n_nodes += r.n_nodes;
      mean.n_vertices += r.n_vertices;
      edges += static_cast<double>(r.n_edges);
      mean.metrics.p += r.metrics.p;
      mean.metrics.p1 += r.metrics.p1;
      mean.metrics.p2 += r.metrics.p2;
      mean.metrics.utility += r.metrics.utility;
      mean.metrics.total_interference_w += r.metrics.total_interference_w;
      mean.metrics.capacity_mbps += r.metrics.capacity_mbps;
      mean.runtime_ms += r.runtime_ms;
    }
    mean.n_nodes = static_cast<int>(mean.n_nodes / n);
    mean.n_vertices = static_cast<int>(mean.n_vertices / n);
    mean.n_edges = static_cast<int64_t>(edges / n);
    mean.metrics.p /= n;
    mean.metrics.p1 /= n;
    mean.metrics.p2 /= n;
    mean.metrics.utility /= n;
    mean.metrics.total_interference_w /= n;
    mean.metrics.capacity_mbps /= n;
    mean.runtime_ms /= n;
    rows.push_back(mean);
  }
  return rows;
}

std::vector<ResultRow> Sweep(const ExperimentConfig& cfg,
                             const std::string& axis,
                             const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("no sweep values");
  std::vector<ResultRow> all;
  for (double value : values) {
    ExperimentConfig c = cfg;
    if (axis == "m") {
      c.scenario.grid_width = static_cast<int>(value);
    } else if (axis == "r_s") {
      c.scenario.r_s = value;
    } else if (axis == "radius") {
      c.scenario.gaa.region_radius_km = value;
    } else if (axis == "density") {
      c.scenario.gaa.density_per_km2 = value;
    } else if (axis == "lambda") {
      for (SolverSpec& s : c.solvers) s.lambda = value;
    } else if (axis == "alpha_bar") {
      for (SolverSpec& s : c.solvers) s.alpha_bar = value;
    } else if (axis == "epsilon") {
      for (SolverSpec& s : c.solvers) s.epsilon = value;
    } else if (axis == "trials") {
      for (SolverSpec& s : c.solvers) s.trials = static_cast<int>(value);
    } else {
      throw std::invalid_argument("unknown sweep axis: " + axis);
    }
    std::vector<ResultRow> rows = RunExperiment(c, value);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  return all;
}

namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string RowsToCsv(const std::vector<ResultRow>& rows) {
  std::string out =
      "seed,axis_value,solver,n_nodes,n_vertices,n_edges,p,p1,p2,utility,"
      "total_interference_w,capacity_mbps,runtime_ms\n";
  for (const ResultRow& r : rows) {
    out += r.seed_label;
    out += ',';
    out += FormatDouble(r.axis_value);
    out += ',';
    out += r.solver;
    out += ',';
    out += std::to_string(r.n_nodes);
    out += ',';
    out += std::to_string(r.n_vertices);
    out += ',';
    out += std::to_string(r.n_edges);
    out += ',';
    out += FormatDouble(r.metrics.p);
    out += ',';
    out += FormatDouble(r.metrics.p1);
    out += ',';
    out += FormatDouble(r.metrics.p2);
    out += ',';
    out += FormatDouble(r.metrics.utility);
    out += ',';
    out += FormatDouble(r.metrics.total_interference_w);
    out += ',';
    out += FormatDouble(r.metrics.capacity_mbps);
    out += ',';
    out += FormatDouble(r.runtime_ms);
    out += '\n';
  }
  return out;
}

void WriteBenchOutputs(const ExperimentConfig& cfg,
                       const std::vector<ResultRow>& rows,
                       const std::string& csv_path,
                       const std::string& manifest_path) {
  std::vector<ResultRow> to_write = rows;
  if (!cfg.report_runtime)
    for (ResultRow& r : to_write) r.runtime_ms = 0.0;
  WriteTextFile(csv_path, RowsToCsv(to_write));

  auto now = std::chrono::system_clock::now().time_since_epoch();
  json manifest{
      {"config", ConfigToJson(cfg)},
      {"rows", to_write.size()},
      {"csv", csv_path},
      {"unix_time_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
  };
  WriteTextFile(manifest_path, manifest.dump(2) + "\n");
}

}  // namespace cbrsca
