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

#include "cbrsca/solve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"

#include "cbrsca/graph.hpp"
#include "cbrsca/objective.hpp"
#include "cbrsca/rng.hpp"
#include "cbrsca/scenario.hpp"

using namespace cbrsca;

namespace {

ConflictGraph PathGraph(const std::vector<double>& rewards) {
  ConflictGraph g;
  for (size_t i = 0; i < rewards.size(); ++i) {
    Vertex v;
    v.members = {static_cast<int>(i)};
    v.block = ChannelBlock{static_cast<int>(i) + 1, 1};
    v.reward = rewards[i];
    g.AddVertex(std::move(v));
  }
  for (size_t i = 0; i + 1 < rewards.size(); ++i)
    g.AddEdge(static_cast<int>(i), static_cast<int>(i) + 1);
  return g;
}

ConflictGraph RandomBinaryGraph(int n, double p, Rng* rng,
                                std::vector<double>* weights) {
  ConflictGraph g;
  for (int i = 0; i < n; ++i) {
    Vertex v;
    v.members = {i};
    v.block = ChannelBlock{1, 1};
    g.AddVertex(std::move(v));
    weights->push_back(rng->Uniform(0.0, 5.0));
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng->Uniform() < p) g.AddEdge(u, v);
  return g;
}

// Exact maximum-weight independent set by subset dynamic programming.
double MaxWeightIndependentSet(const ConflictGraph& g,
                               const std::vector<double>& w) {
  int n = g.VertexCount();
  std::vector<uint32_t> nbr(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.adj[v]) nbr[v] |= 1u << u;
  uint32_t full = n == 32 ? 0xffffffffu : (1u << n) - 1;
  double best = 0.0;
  std::vector<char> indep(full + 1, 0);
  std::vector<double> weight(full + 1, 0.0);
  indep[0] = 1;
  for (uint32_t mask = 1; mask <= full; ++mask) {
    int v = __builtin_ctz(mask);
    uint32_t rest = mask & (mask - 1);
    if (!indep[rest] || (nbr[v] & rest)) continue;
    indep[mask] = 1;
    weight[mask] = weight[rest] + w[v];
    best = std::max(best, weight[mask]);
  }
  return best;
}

// Clustered penalty graph with vertices spread over non-empty clusters.
ConflictGraph RandomClusteredGraph(int n_clusters, int max_per_cluster,
                                   double pen_prob, double reward_lo,
                                   double reward_hi, double pen_scale,
                                   Rng* rng) {
  ConflictGraph g;
  std::vector<int> owner;
  for (int c = 0; c < n_clusters; ++c) {
    int k = static_cast<int>(rng->UniformInt(1, max_per_cluster));
    for (int i = 0; i < k; ++i) {
      Vertex v;
      v.members = {c};
      v.block = ChannelBlock{i + 1, 1};
      g.AddVertex(std::move(v));
      g.vertices.back().reward = rng->Uniform(reward_lo, reward_hi);
      owner.push_back(c);
    }
  }
  g.clusters.resize(n_clusters);
  g.cluster_of.assign(g.VertexCount(), -1);
  for (int v = 0; v < g.VertexCount(); ++v) {
    g.clusters[owner[v]].push_back(v);
    g.cluster_of[v] = owner[v];
  }
  for (int u = 0; u < g.VertexCount(); ++u)
    for (int v = 0; v < g.VertexCount(); ++v)
      if (owner[u] != owner[v] && rng->Uniform() < pen_prob)
        g.AddPenalty(u, v, rng->Uniform(0.2, 1.0) * pen_scale);
  g.Validate();
  return g;
}

// Exhaustive best utility over cluster-feasible subsets, independent of the
// production enumeration.
double ExhaustiveBestUtility(const ConflictGraph& g, double lambda) {
  int n = g.VertexCount();
  double best = 0.0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> used(g.clusters.size(), 0);
    std::vector<int> set;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (mask >> v & 1) {
        if (++used[g.cluster_of[v]] > 1) ok = false;
        set.push_back(v);
      }
    if (!ok) continue;
    best = std::max(best, Utility(g, set, lambda));
  }
  return best;
}

// The two-cluster trap: greedy fill locks in vertex 0 (reward 2), but the
// optimum pairs 1 and 2 for 3.9 because the heavy penalty ties 0 to 2.
ConflictGraph TrapGraph() {
  ConflictGraph g;
  for (int i = 0; i < 3; ++i) {
    Vertex v;
    v.members = {i};
    v.block = ChannelBlock{1, 1};
    g.AddVertex(std::move(v));
  }
  g.vertices[0].reward = 2.0;
  g.vertices[1].reward = 1.9;
  g.vertices[2].reward = 2.0;
  g.clusters = {{0, 1}, {2}};
  g.cluster_of = {0, 0, 1};
  g.AddPenalty(0, 2, 1.5);
  g.AddPenalty(2, 0, 1.5);
  g.Validate();
  return g;
}

}  // namespace

TEST_CASE("greedy independent set picks by weight over closed degree") {
  ConflictGraph g = PathGraph({1.0, 3.0, 1.0});
  Solution s = Gmwis(g, {1.0, 3.0, 1.0});
  CHECK(s.selected == std::vector<int>{1});
  CHECK(s.objective == 3.0);
  CHECK(s.stats.iterations == 1);
  CHECK(VerifySelection(g, s.selected, FeasibilityMode::kIndependent));

  // Equal scores break toward the lowest id, re-scoring as the graph shrinks.
  Solution t = Gmwis(g, {2.0, 3.0, 2.0});
  CHECK(t.selected == std::vector<int>{0, 2});
  CHECK(t.objective == 4.0);

  CHECK_THROWS(Gmwis(g, {1.0, 1.0}));
  CHECK_THROWS(Gmwis(g, {1.0, -0.5, 1.0}));
}

TEST_CASE("greedy independent set clears its lower bounds everywhere") {
  Rng rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    int n = static_cast<int>(rng.UniformInt(1, 14));
    double p = rng.Uniform(0.05, 0.9);
    std::vector<double> w;
    ConflictGraph g = RandomBinaryGraph(n, p, &rng, &w);
    Solution s = Gmwis(g, w);
    REQUIRE(VerifySelection(g, s.selected, FeasibilityMode::kIndependent));

    // Selection is maximal: every unselected vertex sees a selected one.
    std::vector<char> in(n, 0);
    for (int v : s.selected) in[v] = 1;
    for (int v = 0; v < n; ++v) {
      if (in[v]) continue;
      bool blocked = false;
      for (int u : g.adj[v]) blocked = blocked || in[u];
      CHECK(blocked);
    }

    double sum = 0.0;
    for (int v : s.selected) sum += w[v];
    CHECK(s.objective == doctest::Approx(sum).epsilon(1e-12));

    // Degree-weighted lower bound, against original degrees.
    double bound = 0.0;
    for (int v = 0; v < n; ++v)
      bound += w[v] / (static_cast<double>(g.adj[v].size()) + 1.0);
    CHECK(s.objective >= bound - 1e-9);

    // Within max-degree factor of the exact optimum.
    double opt = MaxWeightIndependentSet(g, w);
    int delta = std::max(g.MaxDegree(), 1);
    CHECK(s.objective >= opt / delta - 1e-9);
  }
}

TEST_CASE("greedy independent set serves all members through super-nodes") {
  // Line scenario from the builder tests, with both one-channel supers for
  // nodes 1 and 2 spliced in and linear rewards.
  GaaScenario sc;
  sc.region_radius_km = 1.0;
  auto mk = [](int id, double x, ChannelSet avail, std::vector<int> demand) {
    GaaNode n;
    n.id = id;
    n.pos = Point{x, 0.0};
    n.params = RadioParams();
    n.availability = avail;
    n.demand_set = std::move(demand);
    return n;
  };
  sc.nodes.push_back(mk(0, 0.0, ChannelSet::Of({2, 3}), {2}));
  sc.nodes.push_back(mk(1, 0.1, ChannelSet::Of({1, 2}), {1}));
  sc.nodes.push_back(mk(2, 0.13, ChannelSet::Of({1, 2}), {1}));

  ConflictGraph plain = BuildGaaBinaryGraph(sc);
  auto linear = [](ConflictGraph* g) {
    for (Vertex& v : g->vertices)
      v.reward = static_cast<double>(v.members.size() * v.block.len);
  };
  linear(&plain);
  Solution without = Gmwis(plain, GmwisWeights(plain, 0.0));
  CHECK(without.selected == std::vector<int>{0, 1});
  CHECK(without.per_node.size() == 2);  // node 2 starves

  Vertex s1, s2;
  s1.members = {1, 2};
  s1.block = ChannelBlock{1, 1};
  s2.members = {1, 2};
  s2.block = ChannelBlock{2, 1};
  ConflictGraph aug = AugmentCoexistence(plain, {s1, s2});
  linear(&aug);
  Solution with = Gmwis(aug, GmwisWeights(aug, 0.0));
  CHECK(with.selected == std::vector<int>{0, 5});
  REQUIRE(with.per_node.size() == 3);  // the super carries both members
  CHECK(with.per_node.at(0) == ChannelBlock{2, 2});
  CHECK(with.per_node.at(1) == ChannelBlock{1, 1});
  CHECK(with.per_node.at(2) == ChannelBlock{1, 1});
}

TEST_CASE("partition matroid construction and validation") {
  ConflictGraph g = TrapGraph();
  PartitionMatroid m = PartitionMatroid::FromGraph(g);
  CHECK(m.n == 3);
  CHECK(m.InGround(0));
  m.ground = {1, 0, 1};
  CHECK(!m.InGround(1));
  CHECK_NOTHROW(m.Validate());

  ConflictGraph flat = PathGraph({1.0, 1.0});
  CHECK_THROWS(PartitionMatroid::FromGraph(flat));

  PartitionMatroid bad;
  bad.n = 2;
  bad.clusters = {{0}};
  bad.cluster_of = {0, -1};
  CHECK_THROWS(bad.Validate());  // vertex 1 missing from clusters
}

TEST_CASE("local search on a modular objective selects positive values") {
  PartitionMatroid m;
  m.n = 3;
  m.clusters = {{0, 1}, {2}};
  m.cluster_of = {0, 0, 1};
  std::vector<double> value = {5.0, -2.0, 3.0};
  SetFunction f = [&](const std::vector<int>& set) {
    double total = 0.0;
    for (int v : set) total += value[v];
    return total;
  };
  SolverStats stats;
  std::vector<int> got = LocalSearch(m, f, 0.0, &stats);
  CHECK(got == std::vector<int>{0, 2});
  CHECK(stats.accepted_moves == 2);
  CHECK(stats.evaluations > 0);
  CHECK_THROWS(LocalSearch(m, SetFunction(), 0.0));
  CHECK_THROWS(LocalSearch(m, f, -0.1));
}

TEST_CASE("local search escapes a greedy trap through a swap") {
  PartitionMatroid m;
  m.n = 3;
  m.clusters = {{0}, {1, 2}};
  m.cluster_of = {0, 1, 1};
  std::map<std::vector<int>, double> table = {
      {{}, 0.0},     {{0}, 1.0},      {{1}, 10.0},
      {{2}, 10.5},   {{0, 1}, 11.0},  {{0, 2}, 10.6}};
  SetFunction f = [&](const std::vector<int>& set) { return table.at(set); };
  SolverStats stats;
  std::vector<int> got = LocalSearch(m, f, 0.0, &stats);
  CHECK(got == std::vector<int>{0, 1});
  // Greedy reaches {0, 2}; one swap (counted once) replaces 2 with 1.
  CHECK(stats.accepted_moves == 3);
}

TEST_CASE("the approximation slack gates tiny gains") {
  PartitionMatroid m;
  m.n = 1;
  m.clusters = {{0}};
  m.cluster_of = {0};
  SetFunction f = [](const std::vector<int>& set) {
    return set.empty() ? 0.0 : 1e-9;
  };
  // With eps = 0.1 and n = 1 the additive slack is 0.1: the 1e-9 gain loses.
  CHECK(LocalSearch(m, f, 0.1).empty());
  CHECK(LocalSearch(m, f, 0.0) == std::vector<int>{0});
}

TEST_CASE("utility maximizer rescues the complement-pass optimum") {
  ConflictGraph g = TrapGraph();
  Solution s = UtilityMax(g, 1.0, 0.0);
  CHECK(s.selected == std::vector<int>{1, 2});
  CHECK(s.objective == doctest::Approx(3.9).epsilon(1e-12));
  CHECK(s.objective ==
        doctest::Approx(Utility(g, s.selected, 1.0)).epsilon(1e-12));
  CHECK(VerifySelection(g, s.selected, FeasibilityMode::kClusterFeasible));
  CHECK(s.per_node.at(1) == ChannelBlock{1, 1});

  Solution opt = BruteForceOpt(g, 1.0);
  CHECK(opt.selected == s.selected);
  CHECK(opt.objective == doctest::Approx(3.9).epsilon(1e-12));

  ConflictGraph flat = PathGraph({1.0, 1.0});
  CHECK_THROWS(UtilityMax(flat, 1.0, 0.0));
}

TEST_CASE("utility maximizer stays within its approximation guarantee") {
  // Penalties scaled below R_min / n keep the utility nonnegative on every
  // feasible set, the regime the (4 + 2 eps) guarantee addresses.
  Rng rng(77);
  for (double eps : {0.0, 0.5}) {
    for (int trial = 0; trial < 60; ++trial) {
      int n_clusters = static_cast<int>(rng.UniformInt(2, 5));
      ConflictGraph g = RandomClusteredGraph(n_clusters, 3, 0.5, 0.5, 3.0,
                                             /*pen_scale=*/0.0301, &rng);
      // 0.5 / 12 vertices > 0.0301 > 0: worst case stays nonnegative.
      REQUIRE(BruteForceMinUtility(g, 1.0) >= -1e-9);
      Solution um = UtilityMax(g, 1.0, eps);
      Solution opt = BruteForceOpt(g, 1.0);
      CHECK(um.objective >= opt.objective / (4.0 + 2.0 * eps) - 1e-9);
      CHECK(um.objective <= opt.objective + 1e-9);
      CHECK(VerifySelection(g, um.selected, FeasibilityMode::kClusterFeasible));
    }
  }
}

TEST_CASE("sequential coloring schedules groups at a shared cursor") {
  ConflictGraph jobs;
  for (int i = 0; i < 3; ++i) {
    Vertex v;
    v.members = {i};
    v.block = ChannelBlock{0, 0};
    jobs.AddVertex(std::move(v));
  }
  // Independent jobs, lengths {2, 2, 3}: the equal-length pair shares CH 1-2,
  // the third takes CH 3-5.
  Solution s = Npsmc(jobs, {2, 2, 3}, 10);
  CHECK(s.selected == std::vector<int>{0, 1, 2});
  CHECK(s.objective == 3.0);
  CHECK(s.per_node.at(0) == ChannelBlock{1, 2});
  CHECK(s.per_node.at(1) == ChannelBlock{1, 2});
  CHECK(s.per_node.at(2) == ChannelBlock{3, 3});

  // A full clique of length-4 jobs overflows after two rounds.
  ConflictGraph clique = jobs;
  clique.AddEdge(0, 1);
  clique.AddEdge(0, 2);
  clique.AddEdge(1, 2);
  Solution t = Npsmc(clique, {4, 4, 4}, 10);
  CHECK(t.selected == std::vector<int>{0, 1});
  CHECK(t.per_node.at(0) == ChannelBlock{1, 4});
  CHECK(t.per_node.at(1) == ChannelBlock{5, 4});
  CHECK(t.per_node.count(2) == 0);

  // Conflicting unit jobs against a single color: only one fits.
  ConflictGraph pair;
  for (int i = 0; i < 2; ++i) {
    Vertex v;
    v.members = {i};
    v.block = ChannelBlock{0, 0};
    pair.AddVertex(std::move(v));
  }
  pair.AddEdge(0, 1);
  Solution u = Npsmc(pair, {1, 1}, 1);
  CHECK(u.selected == std::vector<int>{0});

  CHECK_THROWS(Npsmc(jobs, {2, 2}, 10));      // demands size mismatch
  CHECK_THROWS(Npsmc(jobs, {2, 2, 11}, 10));  // demand beyond the colors
  CHECK_THROWS(Npsmc(jobs, {2, 2, 3}, 0));
}

TEST_CASE("max-reward greedy takes rewards in order") {
  ConflictGraph g = PathGraph({1.0, 5.0, 3.0});
  Solution s = Mra(g);
  CHECK(s.selected == std::vector<int>{1});
  CHECK(s.objective == 5.0);

  ConflictGraph h = PathGraph({5.0, 1.0, 5.0});
  Solution t = Mra(h);
  CHECK(t.selected == std::vector<int>{0, 2});
  CHECK(t.objective == 10.0);

  ConflictGraph ties = PathGraph({3.0, 3.0});
  CHECK(Mra(ties).selected == std::vector<int>{0});  // lowest id on ties
  CHECK(VerifySelection(h, t.selected, FeasibilityMode::kIndependent));
}

TEST_CASE("random selection keeps the best of its feasible draws") {
  Rng rng(55);
  ConflictGraph g = RandomClusteredGraph(4, 3, 0.4, 0.5, 3.0, 1.0, &rng);
  Solution one = RandomSelect(g, 1.0, 1, 9);
  Solution many = RandomSelect(g, 1.0, 500, 9);
  CHECK(many.objective >= one.objective);
  CHECK(VerifySelection(g, many.selected, FeasibilityMode::kClusterFeasible));
  CHECK(many.objective ==
        doctest::Approx(Utility(g, many.selected, 1.0)).epsilon(1e-12));
  CHECK(many.objective <= BruteForceOpt(g, 1.0).objective + 1e-12);
  // Every draw picks one vertex from every cluster.
  CHECK(one.selected.size() == g.clusters.size());

  Solution again = RandomSelect(g, 1.0, 500, 9);
  CHECK(again.selected == many.selected);
  CHECK(again.objective == many.objective);

  CHECK_THROWS(RandomSelect(g, 1.0, 0, 9));
  ConflictGraph flat = PathGraph({1.0, 1.0});
  CHECK_THROWS(RandomSelect(flat, 1.0, 10, 9));
}

TEST_CASE("brute force matches exhaustive subset enumeration") {
  Rng rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    ConflictGraph g = RandomClusteredGraph(3, 3, 0.5, 0.0, 3.0, 1.0, &rng);
    if (g.VertexCount() > 9) continue;
    double lambda = rng.Uniform(0.0, 2.0);
    Solution opt = BruteForceOpt(g, lambda);
    CHECK(opt.objective ==
          doctest::Approx(ExhaustiveBestUtility(g, lambda)).epsilon(1e-9));
    CHECK(opt.objective ==
          doctest::Approx(Utility(g, opt.selected, lambda)).epsilon(1e-9));
    CHECK(VerifySelection(g, opt.selected, FeasibilityMode::kClusterFeasible));
    CHECK(BruteForceMinUtility(g, lambda) <= 0.0 + 1e-12);  // empty set counts
  }

  ConflictGraph trap = TrapGraph();
  CHECK(BruteForceMinUtility(trap, 2.0) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("brute force refuses oversized products") {
  ConflictGraph g;
  for (int i = 0; i < 21; ++i) {
    Vertex v;
    v.members = {i};
    v.block = ChannelBlock{1, 1};
    g.AddVertex(std::move(v));
  }
  g.clusters.resize(21);
  g.cluster_of.resize(21);
  for (int i = 0; i < 21; ++i) {
    g.clusters[i] = {i};
    g.cluster_of[i] = i;
  }
  // 2^21 feasible sets > the 2e6 enumeration cap.
  CHECK_THROWS(BruteForceOpt(g, 1.0));
}

TEST_CASE("selection verification distinguishes the two feasibility modes") {
  ConflictGraph path = PathGraph({1.0, 1.0, 1.0});
  CHECK(VerifySelection(path, {0, 2}, FeasibilityMode::kIndependent));
  CHECK(!VerifySelection(path, {0, 1}, FeasibilityMode::kIndependent));
  CHECK(!VerifySelection(path, {0, 0}, FeasibilityMode::kIndependent));
  CHECK(!VerifySelection(path, {3}, FeasibilityMode::kIndependent));
  CHECK(!VerifySelection(path, {0}, FeasibilityMode::kClusterFeasible));

  ConflictGraph trap = TrapGraph();
  CHECK(VerifySelection(trap, {0, 2}, FeasibilityMode::kClusterFeasible));
  CHECK(!VerifySelection(trap, {0, 1}, FeasibilityMode::kClusterFeasible));
}

TEST_CASE("assignment expansion rejects double-booked nodes") {
  ConflictGraph g;
  Vertex a;
  a.members = {0};
  a.block = ChannelBlock{1, 1};
  g.AddVertex(std::move(a));
  Vertex super;
  super.members = {0, 1};
  super.block = ChannelBlock{2, 1};
  g.AddVertex(std::move(super));

  std::map<int, ChannelBlock> ok = ExpandAssignment(g, {1});
  CHECK(ok.size() == 2);
  CHECK(ok.at(0) == ChannelBlock{2, 1});
  CHECK_THROWS(ExpandAssignment(g, {0, 1}));  // node 0 appears twice
}

TEST_CASE("local search move counts stay polynomial") {
  Rng rng(88);
  for (int trial = 0; trial < 10; ++trial) {
    ConflictGraph g = RandomClusteredGraph(12, 4, 0.3, 0.0, 3.0, 1.0, &rng);
    int n = g.VertexCount();
    SolverStats stats;
    PartitionMatroid m = PartitionMatroid::FromGraph(g);
    SetFunction f = [&](const std::vector<int>& set) {
      return Utility(g, set, 1.0);
    };
    LocalSearch(m, f, 0.1, &stats);
    double cap = 10.0 * n * n * std::log(std::max(n, 2)) / 0.1;
    CHECK(static_cast<double>(stats.accepted_moves) <= cap);
  }
}
