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

#ifndef CBRSCA_OBJECTIVE_HPP_
#define CBRSCA_OBJECTIVE_HPP_

#include <string>
#include <vector>

#include "cbrsca/graph.hpp"
#include "cbrsca/scenario.hpp"

namespace cbrsca {

enum class RewardKind { kUnit, kLinear, kLog, kCapacity };
enum class PenaltyKind { kInterference, kCapacityLoss };

RewardKind ParseRewardKind(const std::string& name);
PenaltyKind ParsePenaltyKind(const std::string& name);
std::string RewardKindName(RewardKind k);
std::string PenaltyKindName(PenaltyKind k);

struct CapacityParams {
  double noise_density_w_per_hz = 4.0e-21;
  double channel_bandwidth_hz = 1.0e7;
  int quadrature_angles = 24;
  int quadrature_radii = 12;
};

// Spectrum value of selecting a vertex. kUnit: 1 per member; kLinear: members
// x channels; kLog: diminishing returns in channels; kCapacity: Shannon-rate
// estimate (singletons only).
double RewardValue(const Vertex& v, RewardKind kind, const GaaScenario& s,
                   const CapacityParams& cap);

// Interference-free mean capacity of one node over its own service disk, in
// Mbit/s, for a block of `block_len` channels.
double CapacityMbps(const GaaNode& node, int block_len,
                    const CapacityParams& cap);

// Mbit/s the victim loses on the overlapping channels when the interferer
// transmits concurrently.
double CapacityLossMbps(const Vertex& interferer, const Vertex& victim,
                        const GaaScenario& s, const CapacityParams& cap);

// Interference power (watts) the source vertex injects at the victim,
// weighted by the number of overlapping channels. If `at_contour`, distance
// is measured to the nearest point of the victim's service circle instead of
// its center.
double InterferencePenaltyW(const Vertex& src, const Vertex& dst,
                            const GaaScenario& s, bool at_contour = false);

struct UtilityGraphOptions {
  RewardKind reward = RewardKind::kLinear;
  PenaltyKind penalty = PenaltyKind::kInterference;
  bool interference_at_contour = false;
  CapacityParams cap;
};

// Non-binary clustered graph with rewards filled in and penalties from the
// chosen model; interference penalties are normalized into (0, 1] by the
// scenario-wide maximum, capacity-loss penalties stay in Mbit/s.
ConflictGraph BuildUtilityGraph(const GaaScenario& s,
                                const UtilityGraphOptions& opt);

// U(I) = sum of rewards - lambda * sum of directed penalties inside I.
double Utility(const ConflictGraph& g, const std::vector<int>& selected,
               double lambda);

// Marginal utility of adding v to I (v not in I).
double MarginalUtility(const ConflictGraph& g, const std::vector<int>& selected,
                       int v, double lambda);

// Per-vertex weights for the greedy independent-set solver: reward plus a
// lambda-weighted bonus for the number of nodes the vertex serves, so shared
// (super) vertices get credit for every member.
std::vector<double> GmwisWeights(const ConflictGraph& g, double lambda);

}  // namespace cbrsca

#endif  // CBRSCA_OBJECTIVE_HPP_
