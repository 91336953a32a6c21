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

#include "cbrsca.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "cbrsca/coexist.hpp"
#include "cbrsca/harness.hpp"
#include "cbrsca/json_io.hpp"
#include "cbrsca/objective.hpp"
#include "cbrsca/solve.hpp"

using nlohmann::json;

struct cbrsca_scenario {
  cbrsca::ScenarioDoc doc;
};

struct cbrsca_graph {
  cbrsca::ConflictGraph g;
  // Per-area demands ride along for job graphs so the scheduler baseline can
  // run from a handle alone.
  std::vector<int> demands;
};

struct cbrsca_solution {
  cbrsca::Solution sol;
};

namespace {

thread_local std::string g_last_error = "";

void SetError(const std::string& msg) { g_last_error = msg; }

char* CopyString(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ failures onto status codes: parse errors from the JSON layer,
// invalid_argument from validation, runtime_error from IO.
template <typename Fn>
cbrsca_status Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const json::parse_error& e) {
    SetError(e.what());
    return CBRSCA_ERROR_PARSE;
  } catch (const json::exception& e) {
    SetError(e.what());
    return CBRSCA_ERROR_PARSE;
  } catch (const std::invalid_argument& e) {
    SetError(e.what());
    std::string what = e.what();
    if (what.find("too large") != std::string::npos)
      return CBRSCA_ERROR_TOO_LARGE;
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    SetError(e.what());
    return CBRSCA_ERROR_IO;
  } catch (const std::exception& e) {
    SetError(e.what());
    return CBRSCA_ERROR_INTERNAL;
  }
}

cbrsca_status RequireNonNull(const void* p, const char* what) {
  if (p != nullptr) return CBRSCA_OK;
  SetError(std::string(what) + " must not be NULL");
  return CBRSCA_ERROR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* cbrsca_version(void) { return "0.1.0"; }

const char* cbrsca_last_error(void) { return g_last_error.c_str(); }

void cbrsca_string_free(char* s) { delete[] s; }

cbrsca_status cbrsca_scenario_generate(const char* options_json, uint64_t seed,
                                       cbrsca_scenario** out) {
  if (RequireNonNull(options_json, "options_json") != CBRSCA_OK ||
      RequireNonNull(out, "out") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out = nullptr;
  return Guard([&]() {
    json j = json::parse(options_json);
    cbrsca::ScenarioDoc doc;
    std::string tier = j.value("tier", std::string("gaa"));
    if (tier == "pa") {
      doc.tier = cbrsca::ScenarioDoc::Tier::kPa;
      cbrsca::ChannelSet excluded;
      for (int c : j.value("excluded_channels", std::vector<int>()))
        excluded.Insert(c);
      doc.pa = cbrsca::GeneratePaScenario(j.value("grid_width", 10),
                                          j.value("r_s", 1.0), seed, excluded);
    } else if (tier == "gaa") {
      doc.tier = cbrsca::ScenarioDoc::Tier::kGaa;
      cbrsca::GaaGenConfig cfg;
      cfg.region_radius_km = j.value("region_radius_km", cfg.region_radius_km);
      cfg.density_per_km2 = j.value("density_per_km2", cfg.density_per_km2);
      cfg.n_nodes = j.value("n_nodes", cfg.n_nodes);
      cfg.demand_limit = j.value("demand_limit", cfg.demand_limit);
      cfg.activity_max = j.value("activity_max", cfg.activity_max);
      cfg.pa_nodes_per_licensee =
          j.value("pa_nodes_per_licensee", cfg.pa_nodes_per_licensee);
      if (j.contains("licensee_blocks")) {
        cfg.licensee_blocks.clear();
        for (const json& b : j.at("licensee_blocks"))
          cfg.licensee_blocks.push_back(cbrsca::ChannelBlock{
              b.at("lo").get<int>(), b.at("len").get<int>()});
      }
      if (j.contains("radio"))
        cfg.radio = cbrsca::RadioParamsFromJson(j.at("radio"));
      std::string csv = j.value("nodes_csv", std::string());
      doc.gaa = csv.empty()
                    ? cbrsca::GenerateGaaScenario(cfg, seed)
                    : cbrsca::GaaScenarioFromCsv(csv, j.value("center_lat", 0.0),
                                                 j.value("center_lon", 0.0),
                                                 cfg, seed);
    } else {
      SetError("unknown tier: " + tier);
      return CBRSCA_ERROR_INVALID_ARGUMENT;
    }
    *out = new cbrsca_scenario{std::move(doc)};
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_scenario_from_json(const char* json_text,
                                        cbrsca_scenario** out) {
  if (RequireNonNull(json_text, "json_text") != CBRSCA_OK ||
      RequireNonNull(out, "out") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out = nullptr;
  return Guard([&]() {
    cbrsca::ScenarioDoc doc = cbrsca::ScenarioFromJson(json::parse(json_text));
    *out = new cbrsca_scenario{std::move(doc)};
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_scenario_to_json(const cbrsca_scenario* s,
                                      char** out_json) {
  if (RequireNonNull(s, "scenario") != CBRSCA_OK ||
      RequireNonNull(out_json, "out_json") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out_json = nullptr;
  return Guard([&]() {
    *out_json = CopyString(cbrsca::ScenarioToJson(s->doc).dump());
    if (*out_json == nullptr) {
      SetError("allocation failed");
      return CBRSCA_ERROR_INTERNAL;
    }
    return CBRSCA_OK;
  });
}

void cbrsca_scenario_free(cbrsca_scenario* s) { delete s; }

cbrsca_status cbrsca_graph_build(const cbrsca_scenario* s,
                                 const char* options_json, cbrsca_graph** out) {
  if (RequireNonNull(s, "scenario") != CBRSCA_OK ||
      RequireNonNull(options_json, "options_json") != CBRSCA_OK ||
      RequireNonNull(out, "out") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out = nullptr;
  return Guard([&]() {
    json j = json::parse(options_json);
    std::string kind = j.value("kind", std::string());
    auto handle = std::make_unique<cbrsca_graph>();
    if (kind == "pa" || kind == "pa_jobs") {
      if (s->doc.tier != cbrsca::ScenarioDoc::Tier::kPa) {
        SetError("scenario is not priority-tier");
        return CBRSCA_ERROR_INVALID_ARGUMENT;
      }
      handle->g = kind == "pa" ? cbrsca::BuildPaGraph(s->doc.pa)
                               : cbrsca::BuildPaJobGraph(s->doc.pa);
      if (kind == "pa_jobs")
        for (const cbrsca::ServiceArea& a : s->doc.pa.areas)
          handle->demands.push_back(a.n_pals);
    } else if (kind == "gaa_binary" || kind == "gaa_coex" ||
               kind == "gaa_nonbinary") {
      if (s->doc.tier != cbrsca::ScenarioDoc::Tier::kGaa) {
        SetError("scenario is not general-access tier");
        return CBRSCA_ERROR_INVALID_ARGUMENT;
      }
      if (kind == "gaa_binary") {
        handle->g = cbrsca::BuildGaaBinaryGraph(s->doc.gaa);
      } else if (kind == "gaa_coex") {
        cbrsca::ConflictGraph base = cbrsca::BuildGaaBinaryGraph(s->doc.gaa);
        std::vector<cbrsca::Vertex> supers = cbrsca::FormAllSuperNodes(
            s->doc.gaa, j.value("alpha_bar", 1.0),
            j.value("seed", static_cast<uint64_t>(1)));
        handle->g = cbrsca::AugmentCoexistence(std::move(base), supers);
      } else {
        cbrsca::UtilityGraphOptions opt;
        opt.reward =
            cbrsca::ParseRewardKind(j.value("reward", std::string("linear")));
        opt.penalty = cbrsca::ParsePenaltyKind(
            j.value("penalty", std::string("interference")));
        handle->g = cbrsca::BuildUtilityGraph(s->doc.gaa, opt);
      }
      if (j.value("reward", std::string()) != "" && kind != "gaa_nonbinary") {
        cbrsca::RewardKind rk = cbrsca::ParseRewardKind(j.at("reward"));
        cbrsca::CapacityParams cap;
        for (cbrsca::Vertex& v : handle->g.vertices)
          v.reward = cbrsca::RewardValue(v, rk, s->doc.gaa, cap);
      }
    } else {
      SetError("unknown graph kind: " + kind);
      return CBRSCA_ERROR_INVALID_ARGUMENT;
    }
    *out = handle.release();
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_graph_from_json(const char* json_text,
                                     cbrsca_graph** out) {
  if (RequireNonNull(json_text, "json_text") != CBRSCA_OK ||
      RequireNonNull(out, "out") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out = nullptr;
  return Guard([&]() {
    json j = json::parse(json_text);
    auto handle = std::make_unique<cbrsca_graph>();
    handle->g = cbrsca::GraphFromJson(j);
    if (j.contains("demands"))
      handle->demands = j.at("demands").get<std::vector<int>>();
    *out = handle.release();
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_graph_to_json(const cbrsca_graph* g, char** out_json) {
  if (RequireNonNull(g, "graph") != CBRSCA_OK ||
      RequireNonNull(out_json, "out_json") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out_json = nullptr;
  return Guard([&]() {
    json j = cbrsca::GraphToJson(g->g);
    if (!g->demands.empty()) j["demands"] = g->demands;
    *out_json = CopyString(j.dump());
    if (*out_json == nullptr) {
      SetError("allocation failed");
      return CBRSCA_ERROR_INTERNAL;
    }
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_graph_stats(const cbrsca_graph* g, int32_t* n_vertices,
                                 int64_t* n_edges, int64_t* n_penalty_edges) {
  if (RequireNonNull(g, "graph") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  if (n_vertices != nullptr) *n_vertices = g->g.VertexCount();
  if (n_edges != nullptr) *n_edges = g->g.EdgeCount();
  if (n_penalty_edges != nullptr) *n_penalty_edges = g->g.PenaltyEdgeCount();
  return CBRSCA_OK;
}

void cbrsca_graph_free(cbrsca_graph* g) { delete g; }

cbrsca_status cbrsca_solve(const cbrsca_graph* g, const char* options_json,
                           cbrsca_solution** out) {
  if (RequireNonNull(g, "graph") != CBRSCA_OK ||
      RequireNonNull(options_json, "options_json") != CBRSCA_OK ||
      RequireNonNull(out, "out") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out = nullptr;
  return Guard([&]() {
    json j = json::parse(options_json);
    std::string solver = j.value("solver", std::string());
    cbrsca::Solution sol;
    if (solver == "gmwis") {
      std::vector<double> weights;
      if (j.contains("weights")) {
        weights = j.at("weights").get<std::vector<double>>();
      } else {
        double lambda = j.value("lambda", 0.0);
        weights = cbrsca::GmwisWeights(g->g, lambda);
      }
      sol = cbrsca::Gmwis(g->g, weights);
    } else if (solver == "um") {
      sol = cbrsca::UtilityMax(g->g, j.value("lambda", 1.0),
                               j.value("epsilon", 0.0));
    } else if (solver == "npsmc") {
      std::vector<int> demands =
          j.contains("demands") ? j.at("demands").get<std::vector<int>>()
                                : g->demands;
      sol = cbrsca::Npsmc(g->g, demands,
                          j.value("n_colors", cbrsca::kPaChannelCount));
    } else if (solver == "mra") {
      sol = cbrsca::Mra(g->g);
    } else if (solver == "random") {
      sol = cbrsca::RandomSelect(g->g, j.value("lambda", 1.0),
                                 j.value("trials", 10000),
                                 j.value("seed", static_cast<uint64_t>(1)));
    } else if (solver == "brute_force") {
      sol = cbrsca::BruteForceOpt(g->g, j.value("lambda", 1.0));
    } else {
      SetError("unknown solver: " + solver);
      return CBRSCA_ERROR_INVALID_ARGUMENT;
    }
    *out = new cbrsca_solution{std::move(sol)};
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_solution_to_json(const cbrsca_solution* s,
                                      char** out_json) {
  if (RequireNonNull(s, "solution") != CBRSCA_OK ||
      RequireNonNull(out_json, "out_json") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  *out_json = nullptr;
  return Guard([&]() {
    *out_json = CopyString(cbrsca::SolutionToJson(s->sol).dump());
    if (*out_json == nullptr) {
      SetError("allocation failed");
      return CBRSCA_ERROR_INTERNAL;
    }
    return CBRSCA_OK;
  });
}

void cbrsca_solution_free(cbrsca_solution* s) { delete s; }

cbrsca_status cbrsca_bench_run(const char* config_json, const char* csv_path,
                               const char* manifest_path) {
  if (RequireNonNull(config_json, "config_json") != CBRSCA_OK ||
      RequireNonNull(csv_path, "csv_path") != CBRSCA_OK ||
      RequireNonNull(manifest_path, "manifest_path") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  return Guard([&]() {
    cbrsca::ExperimentConfig cfg =
        cbrsca::ConfigFromJson(json::parse(config_json));
    std::vector<cbrsca::ResultRow> rows = cbrsca::RunExperiment(cfg);
    cbrsca::WriteBenchOutputs(cfg, rows, csv_path, manifest_path);
    return CBRSCA_OK;
  });
}

cbrsca_status cbrsca_sweep_run(const char* config_json, const char* axis,
                               const double* values, size_t n_values,
                               const char* csv_path,
                               const char* manifest_path) {
  if (RequireNonNull(config_json, "config_json") != CBRSCA_OK ||
      RequireNonNull(axis, "axis") != CBRSCA_OK ||
      RequireNonNull(values, "values") != CBRSCA_OK ||
      RequireNonNull(csv_path, "csv_path") != CBRSCA_OK ||
      RequireNonNull(manifest_path, "manifest_path") != CBRSCA_OK)
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  if (n_values == 0) {
    SetError("n_values must be >= 1");
    return CBRSCA_ERROR_INVALID_ARGUMENT;
  }
  return Guard([&]() {
    cbrsca::ExperimentConfig cfg =
        cbrsca::ConfigFromJson(json::parse(config_json));
    std::vector<double> vals(values, values + n_values);
    std::vector<cbrsca::ResultRow> rows = cbrsca::Sweep(cfg, axis, vals);
    cbrsca::WriteBenchOutputs(cfg, rows, csv_path, manifest_path);
    return CBRSCA_OK;
  });
}

}  // extern "C"
