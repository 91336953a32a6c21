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

#include "cbrsca/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cbrsca {

namespace {

constexpr int kMaxConsecutiveRejects = 1000;

// Squared distance from a point to the axis-aligned unit tract [tx,tx+1] x
// [ty,ty+1].
double TractDistanceSq(double cx, double cy, int tx, int ty) {
  double dx = std::max({static_cast<double>(tx) - cx, 0.0, cx - (tx + 1.0)});
  double dy = std::max({static_cast<double>(ty) - cy, 0.0, cy - (ty + 1.0)});
  return dx * dx + dy * dy;
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PAScenario GeneratePaScenario(int grid_width, double r_s_km, uint64_t seed,
                              const ChannelSet& excluded) {
  if (grid_width < 1) throw std::invalid_argument("grid_width must be >= 1");
  if (!(r_s_km > 0)) throw std::invalid_argument("r_s_km must be > 0");

  PAScenario s;
  s.grid_width = grid_width;
  s.channels = ChannelSet::All(kPaChannelCount).Minus(excluded);
  if (s.channels.Empty())
    throw std::invalid_argument("no licensable channels remain");

  std::vector<int> load(static_cast<size_t>(grid_width) * grid_width, 0);
  Rng rng(seed);
  int rejects = 0;
  int next_id = 0;
  while (rejects < kMaxConsecutiveRejects) {
    double cx = rng.Uniform(0.0, grid_width);
    double cy = rng.Uniform(0.0, grid_width);
    int n_pals = static_cast<int>(rng.UniformInt(1, kMaxBlockLen));

    // Tracts whose area intersects the disk (tangency does not count).
    std::vector<int> tracts;
    int x0 = std::max(0, static_cast<int>(std::floor(cx - r_s_km)));
    int x1 = std::min(grid_width - 1, static_cast<int>(std::floor(cx + r_s_km)));
    int y0 = std::max(0, static_cast<int>(std::floor(cy - r_s_km)));
    int y1 = std::min(grid_width - 1, static_cast<int>(std::floor(cy + r_s_km)));
    for (int ty = y0; ty <= y1; ++ty)
      for (int tx = x0; tx <= x1; ++tx)
        if (TractDistanceSq(cx, cy, tx, ty) < r_s_km * r_s_km)
          tracts.push_back(ty * grid_width + tx);

    bool fits = !tracts.empty();
    for (int t : tracts)
      if (load[t] + n_pals > kMaxPalsPerTract) fits = false;
    if (!fits) {
      ++rejects;
      continue;
    }
    rejects = 0;
    for (int t : tracts) load[t] += n_pals;
    ServiceArea area;
    area.id = next_id;
    area.licensee_id = next_id;
    area.tract_ids = std::move(tracts);
    area.n_pals = n_pals;
    area.availability = s.channels;
    s.areas.push_back(std::move(area));
    ++next_id;
  }
  return s;
}

int GaaScenario::NodeIndex(int id) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), id,
      [](const GaaNode& n, int v) { return n.id < v; });
  if (it == nodes.end() || it->id != id) return -1;
  return static_cast<int>(it - nodes.begin());
}

const GaaNode& GaaScenario::NodeById(int id) const {
  int idx = NodeIndex(id);
  if (idx < 0) throw std::out_of_range("unknown node id");
  return nodes[idx];
}

void GaaGenConfig::Validate() const {
  if (!(region_radius_km > 0))
    throw std::invalid_argument("region_radius_km must be > 0");
  if (n_nodes < 0 && !(density_per_km2 > 0))
    throw std::invalid_argument("density_per_km2 must be > 0");
  if (demand_limit < 1 || demand_limit > kMaxBlockLen)
    throw std::invalid_argument("demand_limit must be in 1..4");
  if (!(activity_max >= 0))
    throw std::invalid_argument("activity_max must be >= 0");
  if (pa_nodes_per_licensee < 0)
    throw std::invalid_argument("pa_nodes_per_licensee must be >= 0");
  for (const ChannelBlock& b : licensee_blocks)
    if (b.len < 1 || b.lo < 1 || b.hi() > kGaaChannelCount)
      throw std::invalid_argument("licensee block out of CH 1..15");
  radio.Validate();
}

namespace {

Point UniformDiskPoint(Rng& rng, const Point& center, double radius) {
  // Rejection sampling keeps the draw count data-dependent but seeded, so the
  // stream stays reproducible.
  for (;;) {
    double x = rng.Uniform(-radius, radius);
    double y = rng.Uniform(-radius, radius);
    if (x * x + y * y <= radius * radius)
      return Point{center.x_km + x, center.y_km + y};
  }
}

}  // namespace

GaaScenario AssembleGaaScenario(std::vector<GaaNode> nodes,
                                const GaaGenConfig& cfg, Rng& rng) {
  cfg.Validate();
  std::sort(nodes.begin(), nodes.end(),
            [](const GaaNode& a, const GaaNode& b) { return a.id < b.id; });
  for (size_t i = 1; i < nodes.size(); ++i)
    if (nodes[i].id == nodes[i - 1].id)
      throw std::invalid_argument("duplicate node id " +
                                  std::to_string(nodes[i].id));

  GaaScenario s;
  s.center = Point{0.0, 0.0};
  s.region_radius_km = cfg.region_radius_km;
  s.nodes = std::move(nodes);

  std::vector<int> demand(cfg.demand_limit);
  for (int d = 1; d <= cfg.demand_limit; ++d) demand[d - 1] = d;
  for (GaaNode& n : s.nodes) {
    n.params = cfg.radio;
    n.demand_set = demand;
    n.activity = rng.Uniform(0.0, cfg.activity_max);
  }

  double protect_radius = ContourRadiusKm(
      cfg.radio.tx_power_dbm, cfg.radio.service_threshold_dbm, cfg.radio);
  for (const ChannelBlock& block : cfg.licensee_blocks) {
    for (int k = 0; k < cfg.pa_nodes_per_licensee; ++k) {
      PaNode pa;
      pa.pos = UniformDiskPoint(rng, s.center, s.region_radius_km);
      pa.block = block;
      pa.protect_radius_km = protect_radius;
      s.pa_nodes.push_back(pa);
    }
  }

  for (GaaNode& n : s.nodes) n.availability = ComputeGaaAvailability(n, s);
  return s;
}

GaaScenario GenerateGaaScenario(const GaaGenConfig& cfg, uint64_t seed) {
  cfg.Validate();
  Rng rng(seed);
  int n = cfg.n_nodes >= 0
              ? cfg.n_nodes
              : static_cast<int>(std::lround(
                    cfg.density_per_km2 * 3.14159265358979323846 *
                    cfg.region_radius_km * cfg.region_radius_km));
  std::vector<GaaNode> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i].id = i;
    nodes[i].pos = UniformDiskPoint(rng, Point{0.0, 0.0}, cfg.region_radius_km);
  }
  return AssembleGaaScenario(std::move(nodes), cfg, rng);
}

GaaScenario GaaScenarioFromCsv(const std::string& csv_path, double center_lat,
                               double center_lon, const GaaGenConfig& cfg,
                               uint64_t seed) {
  cfg.Validate();
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open " + csv_path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(csv_path + ": empty file");
  {
    std::string header = Trim(line);
    std::string squashed;
    for (char c : header)
      if (c != ' ' && c != '\t') squashed.push_back(c);
    if (squashed != "id,lat,lon")
      throw std::runtime_error(csv_path + ": expected header id,lat,lon");
  }

  std::vector<GaaNode> nodes;
  std::set<int> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = Trim(line);
    if (row.empty()) continue;
    std::stringstream ss(row);
    std::string f0, f1, f2, extra;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
        !std::getline(ss, f2, ','))
      throw std::runtime_error(csv_path + ":" + std::to_string(line_no) +
                               ": expected 3 fields");
    if (std::getline(ss, extra, ','))
      throw std::runtime_error(csv_path + ":" + std::to_string(line_no) +
                               ": expected 3 fields");
    GaaNode n;
    try {
      size_t used = 0;
      n.id = std::stoi(Trim(f0), &used);
      if (used != Trim(f0).size()) throw std::invalid_argument("id");
      double lat = std::stod(Trim(f1), &used);
      if (used != Trim(f1).size()) throw std::invalid_argument("lat");
      double lon = std::stod(Trim(f2), &used);
      if (used != Trim(f2).size()) throw std::invalid_argument("lon");
      n.pos = ProjectLatLon(lat, lon, center_lat, center_lon);
    } catch (const std::exception&) {
      throw std::runtime_error(csv_path + ":" + std::to_string(line_no) +
                               ": malformed row");
    }
    if (PlanarDistanceKm(n.pos, Point{0.0, 0.0}) > cfg.region_radius_km)
      continue;
    if (!seen.insert(n.id).second)
      throw std::runtime_error(csv_path + ":" + std::to_string(line_no) +
                               ": duplicate node id " + std::to_string(n.id));
    nodes.push_back(n);
  }
  Rng rng(seed);
  return AssembleGaaScenario(std::move(nodes), cfg, rng);
}

ChannelSet ComputeGaaAvailability(const GaaNode& node, const GaaScenario& s) {
  ChannelSet avail = ChannelSet::All(kGaaChannelCount);
  double r_int = ContourRadiusKm(node.params.tx_power_dbm,
                                 node.params.interference_threshold_dbm,
                                 node.params);
  for (const PaNode& pa : s.pa_nodes) {
    double d = PlanarDistanceKm(node.pos, pa.pos);
    if (d < pa.protect_radius_km + r_int)
      for (int c = pa.block.lo; c <= pa.block.hi(); ++c) avail.Erase(c);
  }
  return avail;
}

ConflictClass ClassifyConflict(const GaaNode& i, const GaaNode& j) {
  double d = PlanarDistanceKm(i.pos, j.pos);
  double r_service_i = ContourRadiusKm(
      i.params.tx_power_dbm, i.params.service_threshold_dbm, i.params);
  double r_int_j = ContourRadiusKm(
      j.params.tx_power_dbm, j.params.interference_threshold_dbm, j.params);
  // Distance below which i detects j's transmissions.
  double r_cs = ContourRadiusKm(j.params.tx_power_dbm, i.params.cs_threshold_dbm,
                                j.params);
  if (d < r_cs) return ConflictClass::kTypeII;
  if (d < r_service_i + r_int_j) return ConflictClass::kTypeI;
  return ConflictClass::kNone;
}

bool NodesConflict(const GaaNode& a, const GaaNode& b) {
  return ClassifyConflict(a, b) != ConflictClass::kNone ||
         ClassifyConflict(b, a) != ConflictClass::kNone;
}

}  // namespace cbrsca
