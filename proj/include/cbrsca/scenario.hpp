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

#ifndef CBRSCA_SCENARIO_HPP_
#define CBRSCA_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cbrsca/channels.hpp"
#include "cbrsca/radio.hpp"
#include "cbrsca/rng.hpp"

namespace cbrsca {

// ---------------------------------------------------------------------------
// Priority-access tier: license areas over a census-tract grid.
// ---------------------------------------------------------------------------

struct ServiceArea {
  int id = 0;
  int licensee_id = 0;
  std::vector<int> tract_ids;  // sorted ascending, 4-connected on the grid
  int n_pals = 0;              // contiguous channels demanded, 1..4
  ChannelSet availability;
};

struct PAScenario {
  int grid_width = 0;  // tracts form a grid_width x grid_width unit grid
  ChannelSet channels;  // license pool, CH 1..10 minus incumbent exclusions
  std::vector<ServiceArea> areas;

  int TractCount() const { return grid_width * grid_width; }
};

// Draws circular license areas of radius r_s_km (tract units) with centers
// uniform over the grid and demands uniform in {1..4}; a draw is rejected if
// any covered tract would exceed the 7-license cap. Stops after 1000
// consecutive rejections.
PAScenario GeneratePaScenario(int grid_width, double r_s_km, uint64_t seed,
                              const ChannelSet& excluded = ChannelSet());

// ---------------------------------------------------------------------------
// General-access tier: point nodes inside a circular deployment region.
// ---------------------------------------------------------------------------

struct GaaNode {
  int id = 0;
  Point pos;
  RadioParams params;
  ChannelSet availability;       // channels not blocked by priority users
  std::vector<int> demand_set;   // acceptable block lengths, sorted ascending
  double activity = 0.0;         // duty-cycle proxy in [0, activity_max]
};

// An incumbent priority node whose protection area blocks its block's
// channels for nearby general-access nodes.
struct PaNode {
  Point pos;
  ChannelBlock block;
  double protect_radius_km = 0.0;
};

struct GaaScenario {
  std::vector<GaaNode> nodes;  // sorted by id, ids unique
  std::vector<PaNode> pa_nodes;
  Point center;
  double region_radius_km = 0.0;

  int NodeIndex(int id) const;           // -1 if absent
  const GaaNode& NodeById(int id) const;  // throws if absent
};

struct GaaGenConfig {
  double region_radius_km = 0.8;
  double density_per_km2 = 75.0;
  int n_nodes = -1;  // >= 0 overrides the density-derived count
  int demand_limit = 4;  // demand set is {1, .., demand_limit}
  double activity_max = 4.0;
  RadioParams radio;
  // Incumbent layout: per-licensee channel blocks, each licensee placing
  // pa_nodes_per_licensee transmitters uniformly in the region.
  std::vector<ChannelBlock> licensee_blocks = {{1, 4}, {5, 3}};
  int pa_nodes_per_licensee = 10;

  void Validate() const;
};

// Synthetic scenario: node positions uniform over the region disk.
GaaScenario GenerateGaaScenario(const GaaGenConfig& cfg, uint64_t seed);

// Nodes from a CSV with header "id,lat,lon"; positions are projected around
// (center_lat, center_lon) and rows outside region_radius_km are dropped.
// Activities and incumbents are still drawn from `seed`.
GaaScenario GaaScenarioFromCsv(const std::string& csv_path, double center_lat,
                               double center_lon, const GaaGenConfig& cfg,
                               uint64_t seed);

// Shared assembly step: sorts/validates nodes, draws per-node activities,
// places incumbent transmitters, and computes per-node availability.
GaaScenario AssembleGaaScenario(std::vector<GaaNode> nodes,
                                const GaaGenConfig& cfg, Rng& rng);

// Channels of CH 1..15 not blocked by any incumbent protection area, where a
// node is blocked on channel c if some incumbent using c sits closer than
// protect_radius + the node's own interference radius.
ChannelSet ComputeGaaAvailability(const GaaNode& node, const GaaScenario& s);

// Pairwise relationship between two nodes, derived from their service,
// interference, and carrier-sense contours.
enum class ConflictClass {
  kNone,    // far enough apart to share a channel freely
  kTypeI,   // j degrades i's contour but i cannot hear j
  kTypeII,  // i can carrier-sense j; sharing costs airtime, not integrity
};

// Impact of transmitter j on receiver-side node i.
ConflictClass ClassifyConflict(const GaaNode& i, const GaaNode& j);

// True if either direction is Type I or Type II.
bool NodesConflict(const GaaNode& a, const GaaNode& b);

}  // namespace cbrsca

#endif  // CBRSCA_SCENARIO_HPP_
