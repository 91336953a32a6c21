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

#include "cbrsca/coexist.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cbrsca/rng.hpp"

namespace cbrsca {

CsGraph BuildCsGraph(const GaaScenario& s, const ChannelBlock& block) {
  if (block.len < 1) throw std::invalid_argument("empty block");
  CsGraph g;
  std::vector<int> idx_of;  // scenario node index per cs-graph node
  for (size_t i = 0; i < s.nodes.size(); ++i) {
    const GaaNode& n = s.nodes[i];
    bool feasible =
        n.availability.ContainsAll(block.AsSet()) &&
        std::binary_search(n.demand_set.begin(), n.demand_set.end(),
                           block.len);
    if (feasible) {
      g.node_ids.push_back(n.id);
      idx_of.push_back(static_cast<int>(i));
    }
  }
  g.adj.resize(g.node_ids.size());
  for (size_t a = 0; a < g.node_ids.size(); ++a)
    for (size_t b = a + 1; b < g.node_ids.size(); ++b) {
      const GaaNode& na = s.nodes[idx_of[a]];
      const GaaNode& nb = s.nodes[idx_of[b]];
      if (ClassifyConflict(na, nb) == ConflictClass::kTypeII &&
          ClassifyConflict(nb, na) == ConflictClass::kTypeII) {
        g.adj[a].push_back(static_cast<int>(b));
        g.adj[b].push_back(static_cast<int>(a));
      }
    }
  for (auto& list : g.adj) std::sort(list.begin(), list.end());
  return g;
}

namespace {

void BronKerbosch(const CsGraph& g, std::vector<int>& r, std::vector<int> p,
                  std::vector<int> x, std::vector<std::vector<int>>* out) {
  if (p.empty() && x.empty()) {
    std::vector<int> clique;
    for (int v : r) clique.push_back(g.node_ids[v]);
    std::sort(clique.begin(), clique.end());
    out->push_back(std::move(clique));
    return;
  }
  // Pivot on the vertex of P ∪ X with most neighbors in P; only non-neighbors
  // of the pivot branch, which prunes duplicate maximal cliques.
  int pivot = -1;
  size_t best = 0;
  auto count_in_p = [&](int u) {
    size_t c = 0;
    for (int w : g.adj[u])
      if (std::binary_search(p.begin(), p.end(), w)) ++c;
    return c;
  };
  for (int u : p) {
    size_t c = count_in_p(u);
    if (pivot < 0 || c > best) {
      pivot = u;
      best = c;
    }
  }
  for (int u : x) {
    size_t c = count_in_p(u);
    if (pivot < 0 || c > best) {
      pivot = u;
      best = c;
    }
  }
  std::vector<int> candidates;
  for (int v : p)
    if (pivot < 0 ||
        !std::binary_search(g.adj[pivot].begin(), g.adj[pivot].end(), v))
      candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> p2, x2;
    for (int w : p)
      if (std::binary_search(g.adj[v].begin(), g.adj[v].end(), w))
        p2.push_back(w);
    for (int w : x)
      if (std::binary_search(g.adj[v].begin(), g.adj[v].end(), w))
        x2.push_back(w);
    r.push_back(v);
    BronKerbosch(g, r, std::move(p2), std::move(x2), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    auto it = std::lower_bound(x.begin(), x.end(), v);
    x.insert(it, v);
  }
}

}  // namespace

std::vector<std::vector<int>> MaximalCliques(const CsGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> r, p, x;
  for (size_t i = 0; i < g.node_ids.size(); ++i)
    p.push_back(static_cast<int>(i));
  BronKerbosch(g, r, std::move(p), std::move(x), &out);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<int, int> AssignCliques(const std::vector<std::vector<int>>& cliques,
                                 uint64_t seed) {
  std::map<int, std::vector<int>> options;  // node id -> clique indices
  for (size_t c = 0; c < cliques.size(); ++c) {
    if (!std::is_sorted(cliques[c].begin(), cliques[c].end()))
      throw std::invalid_argument("cliques must be sorted");
    for (int id : cliques[c]) options[id].push_back(static_cast<int>(c));
  }
  Rng rng(seed);
  std::map<int, int> chosen;
  for (const auto& [id, opts] : options) {
    int pick = opts.size() == 1
                   ? opts[0]
                   : opts[rng.UniformInt(0, static_cast<int>(opts.size()) - 1)];
    chosen[id] = pick;
  }
  return chosen;
}

double MappedActivity(double activity, int block_len) {
  if (block_len < 1) throw std::invalid_argument("block_len must be >= 1");
  if (activity < 0) throw std::invalid_argument("activity must be >= 0");
  double v = std::min(activity / block_len, 1.0);
  return std::max(v, 1e-9);
}

std::vector<PackedBin> FfdPack(
    const std::vector<std::pair<int, double>>& items, double alpha_bar) {
  if (!(alpha_bar > 0)) throw std::invalid_argument("alpha_bar must be > 0");
  for (const auto& [id, sz] : items) {
    (void)id;
    if (!(sz > 0)) throw std::invalid_argument("item size must be > 0");
    if (sz > alpha_bar)
      throw std::invalid_argument("item larger than bin capacity");
  }
  std::vector<std::pair<int, double>> sorted = items;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  std::vector<PackedBin> bins;
  for (const auto& [id, sz] : sorted) {
    bool placed = false;
    for (PackedBin& bin : bins)
      if (bin.load + sz <= alpha_bar) {
        bin.node_ids.push_back(id);
        bin.load += sz;
        placed = true;
        break;
      }
    if (!placed) bins.push_back(PackedBin{{id}, sz});
  }
  for (PackedBin& bin : bins)
    std::sort(bin.node_ids.begin(), bin.node_ids.end());
  return bins;
}

std::vector<Vertex> FormSuperNodes(const GaaScenario& s,
                                   const ChannelBlock& block, double alpha_bar,
                                   uint64_t seed) {
  if (!(alpha_bar > 0)) throw std::invalid_argument("alpha_bar must be > 0");
  CsGraph cs = BuildCsGraph(s, block);
  std::vector<std::vector<int>> cliques = MaximalCliques(cs);
  std::map<int, int> membership = AssignCliques(cliques, seed);

  std::vector<Vertex> supers;
  for (size_t c = 0; c < cliques.size(); ++c) {
    std::vector<std::pair<int, double>> items;
    for (int id : cliques[c]) {
      auto it = membership.find(id);
      if (it == membership.end() || it->second != static_cast<int>(c))
        continue;
      double sz = MappedActivity(s.NodeById(id).activity, block.len);
      // Nodes too busy to share a block with anyone stay singletons.
      if (sz > alpha_bar) continue;
      items.push_back({id, sz});
    }
    if (items.size() < 2) continue;
    for (const PackedBin& bin : FfdPack(items, alpha_bar)) {
      if (bin.node_ids.size() < 2) continue;
      Vertex v;
      v.members = bin.node_ids;
      v.block = block;
      supers.push_back(std::move(v));
    }
  }
  return supers;
}

std::vector<Vertex> FormAllSuperNodes(const GaaScenario& s, double alpha_bar,
                                      uint64_t seed) {
  // Distinct feasible blocks across all nodes, canonical order.
  std::set<std::pair<int, int>> keys;  // (len, lo)
  for (const GaaNode& n : s.nodes)
    for (const ChannelBlock& b : EnumerateBlocks(n.availability, n.demand_set))
      keys.insert({b.len, b.lo});
  std::vector<Vertex> supers;
  for (const auto& [len, lo] : keys) {
    // Per-block seed keyed on the block itself, so one block's grouping does
    // not depend on which other blocks happen to be feasible.
    uint64_t block_seed = DeriveSeed(seed, static_cast<uint64_t>(len),
                                     static_cast<uint64_t>(lo));
    std::vector<Vertex> part =
        FormSuperNodes(s, ChannelBlock{lo, len}, alpha_bar, block_seed);
    supers.insert(supers.end(), part.begin(), part.end());
  }
  return supers;
}

}  // namespace cbrsca
