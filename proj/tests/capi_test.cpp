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

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

#include "cbrsca/json_io.hpp"

using nlohmann::json;

namespace {

// Takes ownership of a C string out-parameter and parses it.
json TakeJson(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  cbrsca_string_free(s);
  return j;
}

cbrsca_scenario* MakeGaaScenario(int n_nodes, uint64_t seed) {
  json opts{{"tier", "gaa"},
            {"n_nodes", n_nodes},
            {"region_radius_km", 0.3},
            {"demand_limit", 2},
            {"pa_nodes_per_licensee", 2}};
  cbrsca_scenario* s = nullptr;
  REQUIRE(cbrsca_scenario_generate(opts.dump().c_str(), seed, &s) == CBRSCA_OK);
  REQUIRE(s != nullptr);
  return s;
}

cbrsca_scenario* MakePaScenario(int grid_width, uint64_t seed) {
  json opts{{"tier", "pa"}, {"grid_width", grid_width}, {"r_s", 1.0}};
  cbrsca_scenario* s = nullptr;
  REQUIRE(cbrsca_scenario_generate(opts.dump().c_str(), seed, &s) == CBRSCA_OK);
  REQUIRE(s != nullptr);
  return s;
}

}  // namespace

TEST_CASE("version and error strings are always available") {
  REQUIRE(cbrsca_version() != nullptr);
  CHECK(std::string(cbrsca_version()) == "0.1.0");
  REQUIRE(cbrsca_last_error() != nullptr);

  // Free functions tolerate NULL.
  cbrsca_string_free(nullptr);
  cbrsca_scenario_free(nullptr);
  cbrsca_graph_free(nullptr);
  cbrsca_solution_free(nullptr);
}

TEST_CASE("null arguments are rejected with a message") {
  cbrsca_scenario* s = nullptr;
  CHECK(cbrsca_scenario_generate(nullptr, 1, &s) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(cbrsca_last_error()).find("must not be NULL") !=
        std::string::npos);
  CHECK(cbrsca_scenario_generate("{}", 1, nullptr) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_scenario_from_json(nullptr, &s) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_scenario_to_json(nullptr, nullptr) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);

  cbrsca_graph* g = nullptr;
  CHECK(cbrsca_graph_build(nullptr, "{}", &g) == CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_graph_from_json(nullptr, &g) == CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_graph_stats(nullptr, nullptr, nullptr, nullptr) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);

  cbrsca_solution* sol = nullptr;
  CHECK(cbrsca_solve(nullptr, "{}", &sol) == CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_solution_to_json(nullptr, nullptr) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);

  CHECK(cbrsca_bench_run(nullptr, "a.csv", "a.json") ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  double v = 1.0;
  CHECK(cbrsca_sweep_run("{}", "lambda", &v, 0, "a.csv", "a.json") ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_sweep_run("{}", nullptr, &v, 1, "a.csv", "a.json") ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("scenario generation, serialization, and parse errors") {
  cbrsca_scenario* pa = MakePaScenario(3, 5);
  char* text = nullptr;
  REQUIRE(cbrsca_scenario_to_json(pa, &text) == CBRSCA_OK);
  json pj = TakeJson(text);
  CHECK(pj.at("tier") == "pa");
  CHECK(!pj.at("areas").empty());

  // from_json -> to_json is the identity on the document.
  cbrsca_scenario* back = nullptr;
  REQUIRE(cbrsca_scenario_from_json(pj.dump().c_str(), &back) == CBRSCA_OK);
  char* text2 = nullptr;
  REQUIRE(cbrsca_scenario_to_json(back, &text2) == CBRSCA_OK);
  CHECK(TakeJson(text2) == pj);
  cbrsca_scenario_free(back);
  cbrsca_scenario_free(pa);

  cbrsca_scenario* gaa = MakeGaaScenario(12, 9);
  char* gtext = nullptr;
  REQUIRE(cbrsca_scenario_to_json(gaa, &gtext) == CBRSCA_OK);
  json gj = TakeJson(gtext);
  CHECK(gj.at("tier") == "gaa");
  CHECK(gj.at("nodes").size() == 12);
  cbrsca_scenario_free(gaa);

  cbrsca_scenario* s = nullptr;
  CHECK(cbrsca_scenario_generate("{not json", 1, &s) == CBRSCA_ERROR_PARSE);
  CHECK(s == nullptr);
  CHECK(cbrsca_scenario_generate("{\"tier\":\"esc\"}", 1, &s) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(cbrsca_last_error()).find("unknown tier") !=
        std::string::npos);
  CHECK(cbrsca_scenario_from_json("]", &s) == CBRSCA_ERROR_PARSE);

  // A missing node CSV surfaces as an IO failure.
  json csv_opts{{"tier", "gaa"}, {"nodes_csv", "/tmp/cbrsca_missing_991.csv"}};
  CHECK(cbrsca_scenario_generate(csv_opts.dump().c_str(), 1, &s) ==
        CBRSCA_ERROR_IO);
  CHECK(std::string(cbrsca_last_error()).find("cannot open") !=
        std::string::npos);
}

TEST_CASE("graph construction variants and stats") {
  cbrsca_scenario* gaa = MakeGaaScenario(10, 3);

  cbrsca_graph* binary = nullptr;
  REQUIRE(cbrsca_graph_build(gaa, "{\"kind\":\"gaa_binary\"}", &binary) ==
          CBRSCA_OK);
  int32_t nv = 0;
  int64_t ne = 0, np = 0;
  REQUIRE(cbrsca_graph_stats(binary, &nv, &ne, &np) == CBRSCA_OK);
  CHECK(nv > 0);
  CHECK(np == 0);

  // Coexistence augmentation can only add vertices.
  cbrsca_graph* coex = nullptr;
  json coex_opts{{"kind", "gaa_coex"}, {"alpha_bar", 1.0}, {"seed", 1}};
  REQUIRE(cbrsca_graph_build(gaa, coex_opts.dump().c_str(), &coex) ==
          CBRSCA_OK);
  int32_t cv = 0;
  REQUIRE(cbrsca_graph_stats(coex, &cv, nullptr, nullptr) == CBRSCA_OK);
  CHECK(cv >= nv);
  cbrsca_graph_free(coex);

  cbrsca_graph* penalties = nullptr;
  CHECK(cbrsca_graph_build(gaa, "{\"kind\":\"gaa_nonbinary\"}", &penalties) ==
        CBRSCA_OK);
  int64_t pe = 0, pp = 0;
  REQUIRE(cbrsca_graph_stats(penalties, nullptr, &pe, &pp) == CBRSCA_OK);
  CHECK(pe == 0);  // penalty graphs carry no hard edges

  // JSON roundtrip preserves the structure.
  char* text = nullptr;
  REQUIRE(cbrsca_graph_to_json(binary, &text) == CBRSCA_OK);
  json gj = TakeJson(text);
  cbrsca_graph* back = nullptr;
  REQUIRE(cbrsca_graph_from_json(gj.dump().c_str(), &back) == CBRSCA_OK);
  char* text2 = nullptr;
  REQUIRE(cbrsca_graph_to_json(back, &text2) == CBRSCA_OK);
  CHECK(TakeJson(text2) == gj);
  cbrsca_graph_free(back);

  // Tier/kind mismatches.
  cbrsca_graph* bad = nullptr;
  CHECK(cbrsca_graph_build(gaa, "{\"kind\":\"pa\"}", &bad) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_graph_build(gaa, "{\"kind\":\"mesh\"}", &bad) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(cbrsca_last_error()).find("unknown graph kind") !=
        std::string::npos);
  cbrsca_scenario* pa = MakePaScenario(3, 5);
  CHECK(cbrsca_graph_build(pa, "{\"kind\":\"gaa_binary\"}", &bad) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  cbrsca_scenario_free(pa);

  cbrsca_graph_free(penalties);
  cbrsca_graph_free(binary);
  cbrsca_scenario_free(gaa);
}

TEST_CASE("solvers run through the C boundary") {
  cbrsca_scenario* gaa = MakeGaaScenario(10, 3);
  cbrsca_graph* binary = nullptr;
  REQUIRE(cbrsca_graph_build(gaa, "{\"kind\":\"gaa_binary\"}", &binary) ==
          CBRSCA_OK);
  int32_t nv = 0;
  REQUIRE(cbrsca_graph_stats(binary, &nv, nullptr, nullptr) == CBRSCA_OK);

  // Default weighting (lambda 0 keeps raw rewards).
  cbrsca_solution* sol = nullptr;
  REQUIRE(cbrsca_solve(binary, "{\"solver\":\"gmwis\"}", &sol) == CBRSCA_OK);
  char* text = nullptr;
  REQUIRE(cbrsca_solution_to_json(sol, &text) == CBRSCA_OK);
  json sj = TakeJson(text);
  CHECK(sj.at("objective").get<double>() > 0.0);
  CHECK(!sj.at("selected").empty());
  CHECK(!sj.at("per_node").empty());
  CHECK(sj.at("stats").at("name") == "gmwis");
  cbrsca_solution_free(sol);

  // Caller-supplied weights override the reward column.
  std::vector<double> weights(static_cast<size_t>(nv), 1.0);
  json wopts{{"solver", "gmwis"}, {"weights", weights}};
  cbrsca_solution* wsol = nullptr;
  REQUIRE(cbrsca_solve(binary, wopts.dump().c_str(), &wsol) == CBRSCA_OK);
  cbrsca_solution_free(wsol);
  json short_w{{"solver", "gmwis"}, {"weights", json::array({1.0})}};
  cbrsca_solution* bad = nullptr;
  CHECK(cbrsca_solve(binary, short_w.dump().c_str(), &bad) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);

  cbrsca_solution* msol = nullptr;
  REQUIRE(cbrsca_solve(binary, "{\"solver\":\"mra\"}", &msol) == CBRSCA_OK);
  cbrsca_solution_free(msol);

  // um needs a clustered graph; the binary one is rejected.
  CHECK(cbrsca_solve(binary, "{\"solver\":\"um\"}", &bad) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_solve(binary, "{\"solver\":\"dfs\"}", &bad) ==
        CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(cbrsca_last_error()).find("unknown solver") !=
        std::string::npos);
  CHECK(cbrsca_solve(binary, "{", &bad) == CBRSCA_ERROR_PARSE);

  cbrsca_graph* penalties = nullptr;
  REQUIRE(cbrsca_graph_build(gaa, "{\"kind\":\"gaa_nonbinary\"}", &penalties) ==
          CBRSCA_OK);
  cbrsca_solution* usol = nullptr;
  REQUIRE(cbrsca_solve(penalties,
                       "{\"solver\":\"um\",\"lambda\":1.0,\"epsilon\":0.1}",
                       &usol) == CBRSCA_OK);
  cbrsca_solution_free(usol);
  cbrsca_solution* rsol = nullptr;
  REQUIRE(cbrsca_solve(penalties,
                       "{\"solver\":\"random\",\"trials\":100,\"seed\":4}",
                       &rsol) == CBRSCA_OK);
  cbrsca_solution_free(rsol);

  // Ten nodes with tens of candidate blocks each exceed the exhaustive limit.
  CHECK(cbrsca_solve(penalties, "{\"solver\":\"brute_force\"}", &bad) ==
        CBRSCA_ERROR_TOO_LARGE);
  cbrsca_graph_free(penalties);

  cbrsca_graph_free(binary);
  cbrsca_scenario_free(gaa);
}

TEST_CASE("job graphs carry demands through serialization") {
  cbrsca_scenario* pa = MakePaScenario(4, 7);
  cbrsca_graph* jobs = nullptr;
  REQUIRE(cbrsca_graph_build(pa, "{\"kind\":\"pa_jobs\"}", &jobs) == CBRSCA_OK);

  // npsmc pulls demands from the handle when the options omit them.
  cbrsca_solution* sol = nullptr;
  REQUIRE(cbrsca_solve(jobs, "{\"solver\":\"npsmc\",\"n_colors\":10}", &sol) ==
          CBRSCA_OK);
  char* text = nullptr;
  REQUIRE(cbrsca_solution_to_json(sol, &text) == CBRSCA_OK);
  json sj = TakeJson(text);
  CHECK(sj.at("stats").at("name") == "npsmc");
  cbrsca_solution_free(sol);

  char* gtext = nullptr;
  REQUIRE(cbrsca_graph_to_json(jobs, &gtext) == CBRSCA_OK);
  json gj = TakeJson(gtext);
  REQUIRE(gj.contains("demands"));
  cbrsca_graph* back = nullptr;
  REQUIRE(cbrsca_graph_from_json(gj.dump().c_str(), &back) == CBRSCA_OK);
  cbrsca_solution* sol2 = nullptr;
  REQUIRE(cbrsca_solve(back, "{\"solver\":\"npsmc\",\"n_colors\":10}", &sol2) ==
          CBRSCA_OK);
  cbrsca_solution_free(sol2);
  cbrsca_graph_free(back);
  cbrsca_graph_free(jobs);
  cbrsca_scenario_free(pa);
}

TEST_CASE("bench and sweep write deterministic outputs") {
  json cfg{{"scenario",
            json{{"tier", "gaa"},
                 {"n_nodes", 8},
                 {"region_radius_km", 0.3},
                 {"demand_limit", 2},
                 {"pa_nodes_per_licensee", 2}}},
           {"solvers", json::array({json{{"name", "gmwis"}}})},
           {"master_seed", 11},
           {"n_seeds", 2}};
  std::string cfg_text = cfg.dump();

  const std::string csv_a = "/tmp/cbrsca_capi_a.csv";
  const std::string csv_b = "/tmp/cbrsca_capi_b.csv";
  const std::string man_a = "/tmp/cbrsca_capi_a.json";
  const std::string man_b = "/tmp/cbrsca_capi_b.json";
  REQUIRE(cbrsca_bench_run(cfg_text.c_str(), csv_a.c_str(), man_a.c_str()) ==
          CBRSCA_OK);
  REQUIRE(cbrsca_bench_run(cfg_text.c_str(), csv_b.c_str(), man_b.c_str()) ==
          CBRSCA_OK);
  std::string a = cbrsca::ReadTextFile(csv_a);
  CHECK(a == cbrsca::ReadTextFile(csv_b));
  // Two seed rows, one mean row, one header.
  CHECK(std::count(a.begin(), a.end(), '\n') == 4);
  json manifest = json::parse(cbrsca::ReadTextFile(man_a));
  CHECK(manifest.at("rows").get<int>() == 3);

  const std::string csv_s = "/tmp/cbrsca_capi_s.csv";
  const std::string man_s = "/tmp/cbrsca_capi_s.json";
  double values[2] = {0.0, 2.0};
  REQUIRE(cbrsca_sweep_run(cfg_text.c_str(), "lambda", values, 2, csv_s.c_str(),
                           man_s.c_str()) == CBRSCA_OK);
  std::string sweep_csv = cbrsca::ReadTextFile(csv_s);
  CHECK(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 1 + 2 * 3);
  CHECK(cbrsca_sweep_run(cfg_text.c_str(), "sideways", values, 2, csv_s.c_str(),
                         man_s.c_str()) == CBRSCA_ERROR_INVALID_ARGUMENT);

  CHECK(cbrsca_bench_run("{oops", csv_a.c_str(), man_a.c_str()) ==
        CBRSCA_ERROR_PARSE);
  json bad_cfg = cfg;
  bad_cfg["solvers"][0]["name"] = "zigzag";
  CHECK(cbrsca_bench_run(bad_cfg.dump().c_str(), csv_a.c_str(),
                         man_a.c_str()) == CBRSCA_ERROR_INVALID_ARGUMENT);
  CHECK(cbrsca_bench_run(cfg_text.c_str(), "/no_such_dir_77/x.csv",
                         man_a.c_str()) == CBRSCA_ERROR_IO);

  for (const std::string& p : {csv_a, csv_b, man_a, man_b, csv_s, man_s})
    std::remove(p.c_str());
}
