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

#include "cbrsca/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace cbrsca {

bool ConflictGraph::HasEdge(int u, int v) const {
  if (u < 0 || v < 0 || u >= VertexCount() || v >= VertexCount()) return false;
  const std::vector<int>& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

double ConflictGraph::Penalty(int u, int v) const {
  const auto& out = penalty_out[u];
  auto it = std::lower_bound(
      out.begin(), out.end(), v,
      [](const std::pair<int, double>& e, int x) { return e.first < x; });
  if (it == out.end() || it->first != v) return 0.0;
  return it->second;
}

int64_t ConflictGraph::EdgeCount() const {
  int64_t twice = 0;
  for (const auto& a : adj) twice += static_cast<int64_t>(a.size());
  return twice / 2;
}

int64_t ConflictGraph::PenaltyEdgeCount() const {
  int64_t n = 0;
  for (const auto& out : penalty_out) n += static_cast<int64_t>(out.size());
  return n;
}

int ConflictGraph::MaxDegree() const {
  size_t d = 0;
  for (const auto& a : adj) d = std::max(d, a.size());
  return static_cast<int>(d);
}

void ConflictGraph::AddVertex(Vertex v) {
  v.id = VertexCount();
  vertices.push_back(std::move(v));
  adj.emplace_back();
  penalty_out.emplace_back();
  if (!clusters.empty()) cluster_of.push_back(-1);
}

void ConflictGraph::AddEdge(int u, int v) {
  if (u == v) throw std::invalid_argument("self loop");
  auto insert = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert(adj[u], v);
  insert(adj[v], u);
}

void ConflictGraph::AddPenalty(int u, int v, double p) {
  if (u == v) throw std::invalid_argument("self penalty");
  if (!(p > 0)) throw std::invalid_argument("penalty must be > 0");
  auto& out = penalty_out[u];
  auto it = std::lower_bound(
      out.begin(), out.end(), v,
      [](const std::pair<int, double>& e, int x) { return e.first < x; });
  if (it != out.end() && it->first == v)
    throw std::invalid_argument("duplicate penalty edge");
  out.insert(it, {v, p});
}

void ConflictGraph::Validate() const {
  int n = VertexCount();
  if (static_cast<int>(adj.size()) != n ||
      static_cast<int>(penalty_out.size()) != n)
    throw std::logic_error("graph arrays out of sync");
  for (int u = 0; u < n; ++u) {
    if (vertices[u].id != u) throw std::logic_error("vertex id mismatch");
    if (vertices[u].members.empty())
      throw std::logic_error("vertex with no members");
    if (!std::is_sorted(vertices[u].members.begin(),
                        vertices[u].members.end()))
      throw std::logic_error("unsorted members");
    if (!std::is_sorted(adj[u].begin(), adj[u].end()))
      throw std::logic_error("unsorted adjacency");
    for (int v : adj[u]) {
      if (v < 0 || v >= n || v == u) throw std::logic_error("bad edge");
      if (!HasEdge(v, u)) throw std::logic_error("asymmetric edge");
    }
  }
  if (Clustered()) {
    if (static_cast<int>(cluster_of.size()) != n)
      throw std::logic_error("cluster_of size mismatch");
    std::vector<char> seen(n, 0);
    for (size_t c = 0; c < clusters.size(); ++c)
      for (int v : clusters[c]) {
        if (v < 0 || v >= n || seen[v]) throw std::logic_error("bad cluster");
        if (cluster_of[v] != static_cast<int>(c))
          throw std::logic_error("cluster_of mismatch");
        seen[v] = 1;
      }
    for (int v = 0; v < n; ++v)
      if (!seen[v]) throw std::logic_error("vertex not in any cluster");
    // Clusters are independent by construction: members of one node share it.
    for (int u = 0; u < n; ++u)
      for (int v : adj[u])
        if (cluster_of[u] == cluster_of[v])
          throw std::logic_error("intra-cluster edge");
  }
}

std::vector<ChannelBlock> EnumerateBlocks(const ChannelSet& avail, int len) {
  if (len < 1) throw std::invalid_argument("block length must be >= 1");
  std::vector<ChannelBlock> out;
  for (int lo = 1; lo + len - 1 <= 31; ++lo) {
    bool ok = true;
    for (int c = lo; c < lo + len; ++c)
      if (!avail.Contains(c)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(ChannelBlock{lo, len});
  }
  return out;
}

std::vector<ChannelBlock> EnumerateBlocks(const ChannelSet& avail,
                                          const std::vector<int>& demand_set) {
  std::vector<int> lens = demand_set;
  std::sort(lens.begin(), lens.end());
  lens.erase(std::unique(lens.begin(), lens.end()), lens.end());
  std::vector<ChannelBlock> out;
  for (int len : lens) {
    std::vector<ChannelBlock> part = EnumerateBlocks(avail, len);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

bool TractsIntersect(const std::vector<int>& a, const std::vector<int>& b) {
  // Both sorted ascending.
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

}  // namespace

ConflictGraph BuildPaGraph(const PAScenario& s) {
  ConflictGraph g;
  std::vector<std::pair<int, int>> range;  // per area: [first, last) vertex
  for (const ServiceArea& a : s.areas) {
    int first = g.VertexCount();
    for (const ChannelBlock& b : EnumerateBlocks(a.availability, a.n_pals)) {
      Vertex v;
      v.members = {a.id};
      v.block = b;
      g.AddVertex(std::move(v));
    }
    range.push_back({first, g.VertexCount()});
  }
  size_t m = s.areas.size();
  for (size_t i = 0; i < m; ++i) {
    for (int u = range[i].first; u < range[i].second; ++u)
      for (int v = u + 1; v < range[i].second; ++v) g.AddEdge(u, v);
    for (size_t j = i + 1; j < m; ++j) {
      if (!TractsIntersect(s.areas[i].tract_ids, s.areas[j].tract_ids))
        continue;
      for (int u = range[i].first; u < range[i].second; ++u)
        for (int v = range[j].first; v < range[j].second; ++v)
          if (g.vertices[u].block.Overlaps(g.vertices[v].block))
            g.AddEdge(u, v);
    }
  }
  return g;
}

ConflictGraph BuildPaJobGraph(const PAScenario& s) {
  ConflictGraph g;
  for (const ServiceArea& a : s.areas) {
    Vertex v;
    v.members = {a.id};
    v.block = ChannelBlock{0, 0};  // no channel choice at this level
    g.AddVertex(std::move(v));
  }
  for (size_t i = 0; i < s.areas.size(); ++i)
    for (size_t j = i + 1; j < s.areas.size(); ++j)
      if (TractsIntersect(s.areas[i].tract_ids, s.areas[j].tract_ids))
        g.AddEdge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

namespace {

// Vertex ranges per node plus the conflict test shared by the binary and
// non-binary builders.
struct NodeVertexLayout {
  std::vector<std::pair<int, int>> range;
};

NodeVertexLayout AddNodeVertices(const GaaScenario& s, ConflictGraph* g) {
  NodeVertexLayout layout;
  for (const GaaNode& n : s.nodes) {
    int first = g->VertexCount();
    for (const ChannelBlock& b :
         EnumerateBlocks(n.availability, n.demand_set)) {
      Vertex v;
      v.members = {n.id};
      v.block = b;
      g->AddVertex(std::move(v));
    }
    layout.range.push_back({first, g->VertexCount()});
  }
  return layout;
}

}  // namespace

ConflictGraph BuildGaaBinaryGraph(const GaaScenario& s) {
  ConflictGraph g;
  NodeVertexLayout layout = AddNodeVertices(s, &g);
  size_t m = s.nodes.size();
  for (size_t i = 0; i < m; ++i) {
    auto [ai, bi] = layout.range[i];
    for (int u = ai; u < bi; ++u)
      for (int v = u + 1; v < bi; ++v) g.AddEdge(u, v);
    for (size_t j = i + 1; j < m; ++j) {
      if (!NodesConflict(s.nodes[i], s.nodes[j])) continue;
      auto [aj, bj] = layout.range[j];
      for (int u = ai; u < bi; ++u)
        for (int v = aj; v < bj; ++v)
          if (g.vertices[u].block.Overlaps(g.vertices[v].block))
            g.AddEdge(u, v);
    }
  }
  return g;
}

ConflictGraph AugmentCoexistence(ConflictGraph g,
                                 const std::vector<Vertex>& supers) {
  for (const Vertex& super : supers) {
    if (super.members.size() < 2)
      throw std::invalid_argument("super-node needs >= 2 members");
    if (!std::is_sorted(super.members.begin(), super.members.end()))
      throw std::invalid_argument("super members must be sorted");

    // Per-member children (i, C); they must already exist.
    std::vector<int> children;
    for (int member : super.members) {
      int child = -1;
      for (int u = 0; u < g.VertexCount(); ++u) {
        const Vertex& v = g.vertices[u];
        if (v.block == super.block && v.members.size() == 1 &&
            v.members[0] == member) {
          child = u;
          break;
        }
      }
      if (child < 0)
        throw std::invalid_argument(
            "super-node member lacks a matching child vertex");
      children.push_back(child);
    }

    std::vector<char> is_neighbor(g.VertexCount() + 1, 0);
    for (int child : children)
      for (int w : g.adj[child]) is_neighbor[w] = 1;
    for (int u = 0; u < g.VertexCount(); ++u) {
      const Vertex& v = g.vertices[u];
      bool touches = false;
      for (int member : super.members)
        if (std::binary_search(v.members.begin(), v.members.end(), member))
          touches = true;
      if (touches) is_neighbor[u] = 1;
    }

    Vertex node = super;
    g.AddVertex(std::move(node));
    int sid = g.VertexCount() - 1;
    for (int u = 0; u < sid; ++u)
      if (is_neighbor[u]) g.AddEdge(sid, u);

    // Members may now share the block through the super: drop the hard edges
    // between its children.
    for (size_t a = 0; a < children.size(); ++a)
      for (size_t b = a + 1; b < children.size(); ++b) {
        int u = children[a], v = children[b];
        auto erase = [](std::vector<int>& list, int x) {
          auto it = std::lower_bound(list.begin(), list.end(), x);
          if (it != list.end() && *it == x) list.erase(it);
        };
        erase(g.adj[u], v);
        erase(g.adj[v], u);
      }
  }
  return g;
}

ConflictGraph BuildNonbinaryGraph(const GaaScenario& s,
                                  const PenaltyModel& model, bool normalize) {
  if (!model) throw std::invalid_argument("penalty model required");
  ConflictGraph g;
  NodeVertexLayout layout = AddNodeVertices(s, &g);
  size_t m = s.nodes.size();

  g.clusters.resize(m);
  g.cluster_of.assign(g.VertexCount(), -1);
  for (size_t i = 0; i < m; ++i) {
    for (int u = layout.range[i].first; u < layout.range[i].second; ++u) {
      g.clusters[i].push_back(u);
      g.cluster_of[u] = static_cast<int>(i);
    }
  }

  double max_pen = 0.0;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      // Penalty on i's vertices caused by j's: requires j to impact i.
      if (ClassifyConflict(s.nodes[i], s.nodes[j]) == ConflictClass::kNone)
        continue;
      for (int src = layout.range[j].first; src < layout.range[j].second;
           ++src)
        for (int dst = layout.range[i].first; dst < layout.range[i].second;
             ++dst) {
          if (!g.vertices[src].block.Overlaps(g.vertices[dst].block)) continue;
          double p = model(g.vertices[src], g.vertices[dst]);
          if (!(p >= 0))
            throw std::invalid_argument("penalty model returned negative");
          if (p > 0) {
            g.AddPenalty(src, dst, p);
            max_pen = std::max(max_pen, p);
          }
        }
    }
  }
  if (normalize && max_pen > 0)
    for (auto& out : g.penalty_out)
      for (auto& e : out) e.second /= max_pen;
  return g;
}

}  // namespace cbrsca
