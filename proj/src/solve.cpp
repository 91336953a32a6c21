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
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cbrsca/objective.hpp"
#include "cbrsca/rng.hpp"

namespace cbrsca {

namespace {

class ScopedTimer {
 public:
  explicit ScopedTimer(double* out) : out_(out), start_(Clock::now()) {}
  ~ScopedTimer() {
    if (out_ != nullptr)
      *out_ = std::chrono::duration<double, std::milli>(Clock::now() - start_)
                  .count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  double* out_;
  Clock::time_point start_;
};

}  // namespace

std::map<int, ChannelBlock> ExpandAssignment(const ConflictGraph& g,
                                             const std::vector<int>& selected) {
  std::map<int, ChannelBlock> out;
  for (int v : selected) {
    for (int member : g.vertices[v].members) {
      auto [it, inserted] = out.insert({member, g.vertices[v].block});
      if (!inserted)
        throw std::logic_error("node assigned two blocks");
      (void)it;
    }
  }
  return out;
}

bool VerifySelection(const ConflictGraph& g, const std::vector<int>& selected,
                     FeasibilityMode mode) {
  std::vector<char> in(g.VertexCount(), 0);
  for (int v : selected) {
    if (v < 0 || v >= g.VertexCount() || in[v]) return false;
    in[v] = 1;
  }
  if (mode == FeasibilityMode::kIndependent) {
    for (int v : selected)
      for (int w : g.adj[v])
        if (in[w]) return false;
    return true;
  }
  if (!g.Clustered()) return false;
  std::vector<int> used(g.clusters.size(), 0);
  for (int v : selected) {
    int c = g.cluster_of[v];
    if (c < 0 || ++used[c] > 1) return false;
  }
  return true;
}

Solution Gmwis(const ConflictGraph& g, const std::vector<double>& weights) {
  if (static_cast<int>(weights.size()) != g.VertexCount())
    throw std::invalid_argument("weights size mismatch");
  for (double w : weights)
    if (!(w >= 0)) throw std::invalid_argument("weights must be >= 0");

  Solution sol;
  sol.stats.name = "gmwis";
  ScopedTimer timer(&sol.stats.runtime_ms);

  int n = g.VertexCount();
  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(g.adj[v].size());
  int remaining = n;

  while (remaining > 0) {
    int best = -1;
    double best_score = -1.0;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      double score = weights[v] / (degree[v] + 1.0);
      ++sol.stats.evaluations;
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    sol.selected.push_back(best);
    sol.objective += weights[best];
    ++sol.stats.iterations;

    // Remove the closed neighborhood and fix up residual degrees.
    std::vector<int> removed;
    alive[best] = 0;
    removed.push_back(best);
    for (int w : g.adj[best])
      if (alive[w]) {
        alive[w] = 0;
        removed.push_back(w);
      }
    remaining -= static_cast<int>(removed.size());
    for (int r : removed)
      for (int w : g.adj[r])
        if (alive[w]) --degree[w];
  }
  std::sort(sol.selected.begin(), sol.selected.end());
  sol.per_node = ExpandAssignment(g, sol.selected);
  return sol;
}

PartitionMatroid PartitionMatroid::FromGraph(const ConflictGraph& g) {
  if (!g.Clustered())
    throw std::invalid_argument("graph has no cluster structure");
  PartitionMatroid m;
  m.n = g.VertexCount();
  m.clusters = g.clusters;
  m.cluster_of = g.cluster_of;
  m.Validate();
  return m;
}

void PartitionMatroid::Validate() const {
  if (static_cast<int>(cluster_of.size()) != n)
    throw std::invalid_argument("cluster_of size mismatch");
  if (!ground.empty() && static_cast<int>(ground.size()) != n)
    throw std::invalid_argument("ground size mismatch");
  std::vector<char> seen(n, 0);
  for (size_t c = 0; c < clusters.size(); ++c)
    for (int v : clusters[c]) {
      if (v < 0 || v >= n || seen[v])
        throw std::invalid_argument("clusters must partition vertices");
      if (cluster_of[v] != static_cast<int>(c))
        throw std::invalid_argument("cluster_of mismatch");
      seen[v] = 1;
    }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) throw std::invalid_argument("vertex missing from clusters");
}

namespace {

// Incremental-evaluation interface for the local-search core. Implementations
// track the current set I internally.
class LsObjective {
 public:
  virtual ~LsObjective() = default;
  virtual double Value() const = 0;                 // f(I)
  virtual double GainAdd(int v) = 0;                // f(I+v) - f(I)
  virtual double GainRemove(int d) = 0;             // f(I-d) - f(I)
  virtual double GainSwap(int d, int a) = 0;        // f(I-d+a) - f(I)
  virtual void ApplyAdd(int v) = 0;
  virtual void ApplyRemove(int d) = 0;
};

// Exact re-evaluation through a black-box set function.
class CallbackObjective : public LsObjective {
 public:
  CallbackObjective(int n, const SetFunction& f) : n_(n), in_(n, 0), f_(f) {
    value_ = f_({});
  }
  double Value() const override { return value_; }
  double GainAdd(int v) override { return Eval(v, -1) - value_; }
  double GainRemove(int d) override { return Eval(-1, d) - value_; }
  double GainSwap(int d, int a) override { return Eval(a, d) - value_; }
  void ApplyAdd(int v) override {
    in_[v] = 1;
    value_ = EvalCurrent();
  }
  void ApplyRemove(int d) override {
    in_[d] = 0;
    value_ = EvalCurrent();
  }

 private:
  double EvalCurrent() { return Eval(-1, -1); }
  double Eval(int plus, int minus) {
    std::vector<int> set;
    for (int v = 0; v < n_; ++v)
      if ((in_[v] && v != minus) || v == plus) set.push_back(v);
    return f_(set);
  }
  int n_;
  std::vector<char> in_;
  const SetFunction& f_;
  double value_ = 0.0;
};

// Utility objective with O(1) marginals: pen_[v] tracks the total symmetric
// penalty between v and the current set.
class UtilityObjective : public LsObjective {
 public:
  UtilityObjective(const ConflictGraph& g, double lambda)
      : g_(g), lambda_(lambda), pen_(g.VertexCount(), 0.0) {
    // Symmetrized penalty adjacency: comb(u, v) = P_uv + P_vu.
    comb_.resize(g.VertexCount());
    for (int u = 0; u < g.VertexCount(); ++u)
      for (const auto& [v, p] : g.penalty_out[u]) {
        comb_[u].push_back({v, p});
        comb_[v].push_back({u, p});
      }
    for (auto& list : comb_) {
      std::sort(list.begin(), list.end());
      // Merge duplicate targets (edges present in both directions).
      size_t w = 0;
      for (size_t r = 0; r < list.size(); ++r) {
        if (w > 0 && list[w - 1].first == list[r].first)
          list[w - 1].second += list[r].second;
        else
          list[w++] = list[r];
      }
      list.resize(w);
    }
  }

  double Value() const override { return value_; }
  double GainAdd(int v) override {
    return g_.vertices[v].reward - lambda_ * pen_[v];
  }
  double GainRemove(int d) override {
    return -g_.vertices[d].reward + lambda_ * pen_[d];
  }
  double GainSwap(int d, int a) override {
    return GainRemove(d) + g_.vertices[a].reward -
           lambda_ * (pen_[a] - Comb(a, d));
  }
  void ApplyAdd(int v) override {
    value_ += GainAdd(v);
    for (const auto& [w, p] : comb_[v]) pen_[w] += p;
  }
  void ApplyRemove(int d) override {
    value_ += GainRemove(d);
    for (const auto& [w, p] : comb_[d]) pen_[w] -= p;
  }

 private:
  double Comb(int u, int v) const {
    const auto& list = comb_[u];
    auto it = std::lower_bound(
        list.begin(), list.end(), v,
        [](const std::pair<int, double>& e, int x) { return e.first < x; });
    if (it == list.end() || it->first != v) return 0.0;
    return it->second;
  }
  const ConflictGraph& g_;
  double lambda_;
  std::vector<std::vector<std::pair<int, double>>> comb_;
  std::vector<double> pen_;
  double value_ = 0.0;
};

// Shared local-search core. A candidate value must clear
//   thr(f) = f > 0 ? (1 + eps/n^2) f : f + (eps/n^2) max(|f|, 1)
// strictly during greedy fill; plateau moves (>= thr) are accepted in the
// sweep phase only when eps > 0, since eps == 0 needs strict increase to
// terminate.
std::vector<int> LsCore(const PartitionMatroid& m, LsObjective& obj,
                        double eps, SolverStats* stats) {
  if (eps < 0) throw std::invalid_argument("eps must be >= 0");
  m.Validate();
  int n = m.n;
  SolverStats local;
  SolverStats* st = stats != nullptr ? stats : &local;

  double rel = n > 0 ? eps / (static_cast<double>(n) * n) : 0.0;
  auto threshold = [rel](double f) {
    return f > 0 ? (1.0 + rel) * f : f + rel * std::max(std::fabs(f), 1.0);
  };
  auto accept_greedy = [&](double cand, double f) { return cand > threshold(f); };
  auto accept_sweep = [&](double cand, double f) {
    return eps > 0 ? cand >= threshold(f) : cand > threshold(f);
  };

  std::vector<char> in(n, 0);
  std::vector<int> occupant(m.clusters.size(), -1);
  auto do_add = [&](int v) {
    obj.ApplyAdd(v);
    in[v] = 1;
    occupant[m.cluster_of[v]] = v;
    ++st->accepted_moves;
  };
  auto do_remove = [&](int d) {
    obj.ApplyRemove(d);
    in[d] = 0;
    occupant[m.cluster_of[d]] = -1;
    ++st->accepted_moves;
  };

  // Greedy phase: best feasible addition while it clears the threshold.
  for (;;) {
    int best = -1;
    double best_gain = 0.0;
    for (int v = 0; v < n; ++v) {
      if (in[v] || !m.InGround(v) || occupant[m.cluster_of[v]] != -1) continue;
      double gain = obj.GainAdd(v);
      ++st->evaluations;
      if (best < 0 || gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    if (best < 0) break;
    double f = obj.Value();
    if (!accept_greedy(f + best_gain, f)) break;
    do_add(best);
    ++st->iterations;
  }

  // Sweep phase: first improving delete, then add/swap, in canonical order.
  for (;;) {
    bool moved = false;
    double f = obj.Value();
    for (int d = 0; d < n && !moved; ++d) {
      if (!in[d]) continue;
      double gain = obj.GainRemove(d);
      ++st->evaluations;
      if (accept_sweep(f + gain, f)) {
        do_remove(d);
        ++st->iterations;
        moved = true;
      }
    }
    if (moved) continue;
    for (int a = 0; a < n && !moved; ++a) {
      if (in[a] || !m.InGround(a)) continue;
      int occ = occupant[m.cluster_of[a]];
      if (occ == -1) {
        double gain = obj.GainAdd(a);
        ++st->evaluations;
        if (accept_sweep(f + gain, f)) {
          do_add(a);
          ++st->iterations;
          moved = true;
          break;
        }
      }
      // Swaps that keep the result feasible: either replace the occupant of
      // a's cluster, or (if the cluster is free) any other selected vertex.
      for (int d = 0; d < n && !moved; ++d) {
        if (!in[d]) continue;
        if (occ != -1 && d != occ) continue;
        double gain = obj.GainSwap(d, a);
        ++st->evaluations;
        if (accept_sweep(f + gain, f)) {
          do_remove(d);
          do_add(a);
          // One swap counts as one move.
          --st->accepted_moves;
          ++st->iterations;
          moved = true;
        }
      }
    }
    if (!moved) break;
  }

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (in[v]) out.push_back(v);
  return out;
}

}  // namespace

std::vector<int> LocalSearch(const PartitionMatroid& m, const SetFunction& f,
                             double eps, SolverStats* stats) {
  if (!f) throw std::invalid_argument("objective required");
  CallbackObjective obj(m.n, f);
  return LsCore(m, obj, eps, stats);
}

Solution UtilityMax(const ConflictGraph& g, double lambda, double eps) {
  if (!g.Clustered())
    throw std::invalid_argument("utility maximizer needs a clustered graph");
  Solution sol;
  sol.stats.name = "um";
  ScopedTimer timer(&sol.stats.runtime_ms);

  PartitionMatroid m = PartitionMatroid::FromGraph(g);
  UtilityObjective obj1(g, lambda);
  std::vector<int> first = LsCore(m, obj1, eps, &sol.stats);

  // Second pass on the complement restriction of the partition matroid.
  PartitionMatroid m2 = m;
  m2.ground.assign(m2.n, 1);
  for (int v : first) m2.ground[v] = 0;
  UtilityObjective obj2(g, lambda);
  std::vector<int> second = LsCore(m2, obj2, eps, &sol.stats);

  double u1 = Utility(g, first, lambda);
  double u2 = Utility(g, second, lambda);
  sol.selected = u1 >= u2 ? first : second;
  sol.objective = std::max(u1, u2);
  sol.per_node = ExpandAssignment(g, sol.selected);
  return sol;
}

Solution Npsmc(const ConflictGraph& job_graph, const std::vector<int>& demands,
               int n_colors) {
  if (n_colors < 1) throw std::invalid_argument("n_colors must be >= 1");
  int n = job_graph.VertexCount();
  if (static_cast<int>(demands.size()) != n)
    throw std::invalid_argument("demands size mismatch");
  for (int d : demands)
    if (d < 1 || d > n_colors)
      throw std::invalid_argument("demand out of range");

  Solution sol;
  sol.stats.name = "npsmc";
  ScopedTimer timer(&sol.stats.runtime_ms);

  // Densified compatibility: jobs of different lengths never share a group.
  auto incompatible = [&](int u, int v) {
    return demands[u] != demands[v] || job_graph.HasEdge(u, v);
  };

  std::vector<char> alive(n, 1);
  int remaining = n;
  int cursor = 1;
  while (remaining > 0) {
    // Greedy max independent set on the residual densified graph, unit
    // weights: argmax 1 / (deg + 1) == argmin residual degree.
    std::vector<int> group;
    std::vector<char> usable = alive;
    int usable_count = remaining;
    while (usable_count > 0) {
      int best = -1;
      int best_deg = -1;
      for (int v = 0; v < n; ++v) {
        if (!usable[v]) continue;
        int deg = 0;
        for (int w = 0; w < n; ++w)
          if (w != v && usable[w] && incompatible(v, w)) ++deg;
        ++sol.stats.evaluations;
        if (best < 0 || deg < best_deg) {
          best = v;
          best_deg = deg;
        }
      }
      group.push_back(best);
      usable[best] = 0;
      --usable_count;
      for (int w = 0; w < n; ++w)
        if (usable[w] && incompatible(best, w)) {
          usable[w] = 0;
          --usable_count;
        }
    }
    int len = demands[group[0]];
    if (cursor + len - 1 > n_colors) break;
    for (int v : group) {
      sol.selected.push_back(v);
      alive[v] = 0;
    }
    remaining -= static_cast<int>(group.size());
    ChannelBlock block{cursor, len};
    for (int v : group) {
      for (int member : job_graph.vertices[v].members)
        sol.per_node[member] = block;
    }
    cursor += len;
    ++sol.stats.iterations;
  }
  std::sort(sol.selected.begin(), sol.selected.end());
  sol.objective = static_cast<double>(sol.selected.size());
  return sol;
}

Solution Mra(const ConflictGraph& g) {
  Solution sol;
  sol.stats.name = "mra";
  ScopedTimer timer(&sol.stats.runtime_ms);

  int n = g.VertexCount();
  std::vector<char> alive(n, 1);
  int remaining = n;
  while (remaining > 0) {
    int best = -1;
    double best_reward = 0.0;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      ++sol.stats.evaluations;
      if (best < 0 || g.vertices[v].reward > best_reward) {
        best = v;
        best_reward = g.vertices[v].reward;
      }
    }
    sol.selected.push_back(best);
    sol.objective += best_reward;
    ++sol.stats.iterations;
    alive[best] = 0;
    --remaining;
    for (int w : g.adj[best])
      if (alive[w]) {
        alive[w] = 0;
        --remaining;
      }
  }
  std::sort(sol.selected.begin(), sol.selected.end());
  sol.per_node = ExpandAssignment(g, sol.selected);
  return sol;
}

Solution RandomSelect(const ConflictGraph& g, double lambda, int trials,
                      uint64_t seed) {
  if (!g.Clustered())
    throw std::invalid_argument("random selection needs a clustered graph");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  Solution sol;
  sol.stats.name = "random";
  ScopedTimer timer(&sol.stats.runtime_ms);

  Rng rng(seed);
  std::vector<int> best;
  double best_u = 0.0;
  std::vector<int> pick;
  for (int t = 0; t < trials; ++t) {
    pick.clear();
    for (const auto& cluster : g.clusters) {
      if (cluster.empty()) continue;
      int k = static_cast<int>(
          rng.UniformInt(0, static_cast<int>(cluster.size()) - 1));
      pick.push_back(cluster[k]);
    }
    double u = Utility(g, pick, lambda);
    ++sol.stats.evaluations;
    if (t == 0 || u > best_u) {
      best_u = u;
      best = pick;
    }
    ++sol.stats.iterations;
  }
  std::sort(best.begin(), best.end());
  sol.selected = std::move(best);
  sol.objective = best_u;
  sol.per_node = ExpandAssignment(g, sol.selected);
  return sol;
}

namespace {

void BruteForceScan(const ConflictGraph& g, double lambda,
                    const std::function<void(const std::vector<int>&, double)>&
                        visit) {
  if (!g.Clustered())
    throw std::invalid_argument("brute force needs a clustered graph");
  double product = 1.0;
  for (const auto& c : g.clusters) {
    product *= static_cast<double>(c.size()) + 1.0;
    if (product > kBruteForceLimit)
      throw std::invalid_argument("instance too large for brute force");
  }
  std::vector<int> current;
  std::function<void(size_t, double)> rec = [&](size_t ci, double value) {
    if (ci == g.clusters.size()) {
      visit(current, value);
      return;
    }
    rec(ci + 1, value);  // skip this cluster
    for (int v : g.clusters[ci]) {
      double delta = g.vertices[v].reward;
      for (int u : current) delta -= lambda * (g.Penalty(u, v) + g.Penalty(v, u));
      current.push_back(v);
      rec(ci + 1, value + delta);
      current.pop_back();
    }
  };
  rec(0, 0.0);
}

}  // namespace

Solution BruteForceOpt(const ConflictGraph& g, double lambda) {
  Solution sol;
  sol.stats.name = "brute_force";
  ScopedTimer timer(&sol.stats.runtime_ms);
  bool first = true;
  std::vector<int> best;
  double best_u = 0.0;
  BruteForceScan(g, lambda, [&](const std::vector<int>& set, double value) {
    ++sol.stats.evaluations;
    if (first || value > best_u) {
      first = false;
      best_u = value;
      best = set;
    }
  });
  std::sort(best.begin(), best.end());
  sol.selected = std::move(best);
  sol.objective = best_u;
  sol.per_node = ExpandAssignment(g, sol.selected);
  return sol;
}

double BruteForceMinUtility(const ConflictGraph& g, double lambda) {
  bool first = true;
  double worst = 0.0;
  BruteForceScan(g, lambda, [&](const std::vector<int>&, double value) {
    if (first || value < worst) {
      first = false;
      worst = value;
    }
  });
  return worst;
}

}  // namespace cbrsca
