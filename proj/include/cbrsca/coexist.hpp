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

#ifndef CBRSCA_COEXIST_HPP_
#define CBRSCA_COEXIST_HPP_

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cbrsca/graph.hpp"
#include "cbrsca/scenario.hpp"

namespace cbrsca {

// Carrier-sense graph for one channel block: nodes that could host the block
// and hear each other (mutual Type II), so they can share it by listen-
// before-talk.
struct CsGraph {
  std::vector<int> node_ids;            // sorted ascending
  std::vector<std::vector<int>> adj;    // indices into node_ids, sorted
};

CsGraph BuildCsGraph(const GaaScenario& s, const ChannelBlock& block);

// All maximal cliques, Bron-Kerbosch with pivoting. Each clique is a sorted
// list of node ids; the result is sorted lexicographically.
std::vector<std::vector<int>> MaximalCliques(const CsGraph& g);

// Each node appearing in any clique picks one of its cliques uniformly at
// random (nodes visited in ascending id order). Returns node id -> index
// into `cliques`.
std::map<int, int> AssignCliques(const std::vector<std::vector<int>>& cliques,
                                 uint64_t seed);

// Activity rescaled to the share of a len-channel block a node would occupy,
// clamped to (0, 1]; zero activity maps to a small floor so every item stays
// packable.
double MappedActivity(double activity, int block_len);

struct PackedBin {
  std::vector<int> node_ids;
  double load = 0.0;
};

// First-fit decreasing over (node id, mapped activity) items with per-bin
// capacity `alpha_bar`. Items sorted by activity descending, id ascending on
// ties. Throws if any item exceeds the capacity.
std::vector<PackedBin> FfdPack(
    const std::vector<std::pair<int, double>>& items, double alpha_bar);

// Groups that can share `block`: clique detection on the carrier-sense graph,
// random clique membership, then activity packing; every bin holding >= 2
// nodes becomes a super-node vertex (members, block).
std::vector<Vertex> FormSuperNodes(const GaaScenario& s,
                                   const ChannelBlock& block, double alpha_bar,
                                   uint64_t seed);

// FormSuperNodes over every distinct feasible block in the scenario, in
// canonical block order. Per-block seeds derive from `seed`.
std::vector<Vertex> FormAllSuperNodes(const GaaScenario& s, double alpha_bar,
                                      uint64_t seed);

}  // namespace cbrsca

#endif  // CBRSCA_COEXIST_HPP_
