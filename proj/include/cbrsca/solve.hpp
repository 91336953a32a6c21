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

#ifndef CBRSCA_SOLVE_HPP_
#define CBRSCA_SOLVE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cbrsca/graph.hpp"

namespace cbrsca {

struct SolverStats {
  std::string name;
  int64_t iterations = 0;    // solver-specific unit (selections, moves, ...)
  int64_t evaluations = 0;   // objective / marginal evaluations
  int64_t accepted_moves = 0;
  double runtime_ms = 0.0;
};

struct Solution {
  std::vector<int> selected;  // vertex ids, sorted ascending
  double objective = 0.0;
  // node id -> assigned block; nodes inside a selected super-node map to the
  // super's block.
  std::map<int, ChannelBlock> per_node;
  SolverStats stats;
};

// Greedy maximum-weight independent set: repeatedly take the vertex
// maximizing w(v) / (degree(v) + 1) in the residual graph (ties toward the
// lowest id) and delete its closed neighborhood. Weights must be >= 0.
Solution Gmwis(const ConflictGraph& g, const std::vector<double>& weights);

// Independence system "at most one vertex per cluster".
struct PartitionMatroid {
  int n = 0;
  std::vector<std::vector<int>> clusters;
  std::vector<int> cluster_of;
  std::vector<char> ground;  // usable vertices; empty means all

  static PartitionMatroid FromGraph(const ConflictGraph& g);
  bool InGround(int v) const { return ground.empty() || ground[v]; }
  void Validate() const;
};

using SetFunction = std::function<double(const std::vector<int>&)>;

// Matroid-constrained local search: greedy fill (strict improvement above a
// (1 + eps/n^2) threshold), then first-improvement delete/add/swap sweeps in
// canonical vertex order until no move clears the threshold. eps == 0 uses
// plain strict improvement everywhere. Returns the selected vertex ids.
std::vector<int> LocalSearch(const PartitionMatroid& m, const SetFunction& f,
                             double eps, SolverStats* stats = nullptr);

// Utility maximizer: local search on U, then a second pass restricted to the
// complement of the first result; returns whichever scores higher.
Solution UtilityMax(const ConflictGraph& g, double lambda, double eps);

// Sequential coloring baseline for priority areas. Works on the job graph
// (one vertex per area). Each round finds an independent set among remaining
// same-length jobs -- the graph is densified so different-length jobs are
// incompatible -- gives every selected job the next `len` colors at the
// shared cursor, and advances it. Stops when the next group would overflow
// n_colors.
Solution Npsmc(const ConflictGraph& job_graph, const std::vector<int>& demands,
               int n_colors);

// Max-reward-first greedy on a binary graph: repeatedly select the feasible
// vertex of highest reward (ties toward the lowest id).
Solution Mra(const ConflictGraph& g);

// Uniform random choice of one vertex per cluster, `trials` times; keeps the
// selection with the best utility. Requires a clustered graph.
Solution RandomSelect(const ConflictGraph& g, double lambda, int trials,
                      uint64_t seed);

// Exact utility optimum over the partition feasibility set by exhaustive
// product enumeration; throws if the product of (cluster size + 1) exceeds
// kBruteForceLimit.
inline constexpr double kBruteForceLimit = 2e6;
Solution BruteForceOpt(const ConflictGraph& g, double lambda);
double BruteForceMinUtility(const ConflictGraph& g, double lambda);

enum class FeasibilityMode { kIndependent, kClusterFeasible };

// Checks that `selected` is feasible: pairwise non-adjacent, or at most one
// vertex per cluster.
bool VerifySelection(const ConflictGraph& g, const std::vector<int>& selected,
                     FeasibilityMode mode);

// Expands selected vertices into the node id -> block map; throws if a node
// would receive two blocks.
std::map<int, ChannelBlock> ExpandAssignment(const ConflictGraph& g,
                                             const std::vector<int>& selected);

}  // namespace cbrsca

#endif  // CBRSCA_SOLVE_HPP_
