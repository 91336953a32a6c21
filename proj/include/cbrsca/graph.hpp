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

#ifndef CBRSCA_GRAPH_HPP_
#define CBRSCA_GRAPH_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "cbrsca/channels.hpp"
#include "cbrsca/scenario.hpp"

namespace cbrsca {

// A vertex is a (node-set, channel-block) pair: selecting it assigns the
// block to every member node. Singletons have one member; coexistence
// super-nodes have several.
struct Vertex {
  int id = 0;
  std::vector<int> members;  // node or area ids, sorted ascending
  ChannelBlock block;
  double reward = 1.0;
};

class ConflictGraph {
 public:
  std::vector<Vertex> vertices;
  // Undirected adjacency; each list sorted ascending.
  std::vector<std::vector<int>> adj;
  // Optional partition into per-node clusters (non-binary graphs). Empty for
  // plain binary graphs.
  std::vector<std::vector<int>> clusters;
  std::vector<int> cluster_of;  // vertex -> cluster index, -1 if none
  // Directed penalties: penalty_out[u] holds (v, P_uv) sorted by v, P_uv > 0
  // being the cost imposed on v when u and v are both selected.
  std::vector<std::vector<std::pair<int, double>>> penalty_out;

  int VertexCount() const { return static_cast<int>(vertices.size()); }
  bool Clustered() const { return !clusters.empty(); }
  bool HasEdge(int u, int v) const;
  double Penalty(int u, int v) const;  // P_uv, 0 when no edge
  int64_t EdgeCount() const;
  int64_t PenaltyEdgeCount() const;
  int MaxDegree() const;

  void AddVertex(Vertex v);           // assigns v.id = current count
  void AddEdge(int u, int v);         // idempotent, keeps lists sorted
  void AddPenalty(int u, int v, double p);
  void Validate() const;              // structural invariants, throws
};

// All blocks of exactly `len` contiguous channels inside `avail`, in
// canonical (len, lo) order.
std::vector<ChannelBlock> EnumerateBlocks(const ChannelSet& avail, int len);

// All blocks whose length appears in `demand_set`, canonical order.
std::vector<ChannelBlock> EnumerateBlocks(const ChannelSet& avail,
                                          const std::vector<int>& demand_set);

// Priority-tier graph: one vertex per (area, feasible block); edges between
// same-area vertices and between block-overlapping vertices of areas whose
// tract sets intersect.
ConflictGraph BuildPaGraph(const PAScenario& s);

// One vertex per area (no channel expansion); edges where tract sets
// intersect. Input for schedulers that color whole areas.
ConflictGraph BuildPaJobGraph(const PAScenario& s);

// General-access binary graph: one vertex per (node, feasible block); edges
// between same-node vertices and between block-overlapping vertices of
// conflicting nodes.
ConflictGraph BuildGaaBinaryGraph(const GaaScenario& s);

// Inserts coexistence super-node vertices into a binary graph: each super
// (S, C) connects to every vertex touching a member of S and inherits all
// neighbors of its per-member children (i, C); the edges between those
// children are removed so members may share C.
ConflictGraph AugmentCoexistence(ConflictGraph g,
                                 const std::vector<Vertex>& supers);

// Raw (pre-normalization) penalty that selecting `src` imposes on `dst`.
using PenaltyModel =
    std::function<double(const Vertex& src, const Vertex& dst)>;

// Non-binary clustered graph: same vertices as the binary graph but grouped
// into per-node clusters with no intra-cluster edges; conflicts across nodes
// become directed penalty pairs instead of hard edges. If `normalize`, all
// penalties are scaled by the scenario-wide maximum into (0, 1].
ConflictGraph BuildNonbinaryGraph(const GaaScenario& s,
                                  const PenaltyModel& model, bool normalize);

}  // namespace cbrsca

#endif  // CBRSCA_GRAPH_HPP_
