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

#include "cbrsca/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbrsca {

RewardKind ParseRewardKind(const std::string& name) {
  if (name == "unit") return RewardKind::kUnit;
  if (name == "linear") return RewardKind::kLinear;
  if (name == "log") return RewardKind::kLog;
  if (name == "capacity") return RewardKind::kCapacity;
  throw std::invalid_argument("unknown reward kind: " + name);
}

PenaltyKind ParsePenaltyKind(const std::string& name) {
  if (name == "interference") return PenaltyKind::kInterference;
  if (name == "capacity") return PenaltyKind::kCapacityLoss;
  throw std::invalid_argument("unknown penalty kind: " + name);
}

std::string RewardKindName(RewardKind k) {
  switch (k) {
    case RewardKind::kUnit: return "unit";
    case RewardKind::kLinear: return "linear";
    case RewardKind::kLog: return "log";
    case RewardKind::kCapacity: return "capacity";
  }
  return "?";
}

std::string PenaltyKindName(PenaltyKind k) {
  switch (k) {
    case PenaltyKind::kInterference: return "interference";
    case PenaltyKind::kCapacityLoss: return "capacity";
  }
  return "?";
}

namespace {

// Deterministic area average of f(point) over a disk: annular rings at the
// area centroid radius of each ring, uniformly spaced angles. Ring weights
// are proportional to ring area.
template <typename F>
double DiskAverage(const Point& center, double radius, int n_angles,
                   int n_radii, F&& f) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < n_radii; ++k) {
    double r1 = radius * k / n_radii;
    double r2 = radius * (k + 1) / n_radii;
    // Area centroid of the annulus [r1, r2].
    double rc = 2.0 / 3.0 * (r2 * r2 * r2 - r1 * r1 * r1) /
                (r2 * r2 - r1 * r1);
    double w = r2 * r2 - r1 * r1;
    for (int a = 0; a < n_angles; ++a) {
      double theta = kTwoPi * (a + 0.5) / n_angles;
      Point x{center.x_km + rc * std::cos(theta),
              center.y_km + rc * std::sin(theta)};
      num += w * f(x);
      den += w;
    }
  }
  return num / den;
}

void ValidateCapacityParams(const CapacityParams& cap) {
  if (!(cap.noise_density_w_per_hz > 0))
    throw std::invalid_argument("noise density must be > 0");
  if (!(cap.channel_bandwidth_hz > 0))
    throw std::invalid_argument("channel bandwidth must be > 0");
  if (cap.quadrature_angles < 1 || cap.quadrature_radii < 1)
    throw std::invalid_argument("quadrature grid must be >= 1x1");
}

// Mean per-channel Shannon rate (bit/s) over `node`'s service disk, with an
// optional single interferer.
double PerChannelRateBps(const GaaNode& node, const GaaNode* interferer,
                         const CapacityParams& cap) {
  double radius = ContourRadiusKm(node.params.tx_power_dbm,
                                  node.params.service_threshold_dbm,
                                  node.params);
  double noise_w = cap.noise_density_w_per_hz * cap.channel_bandwidth_hz;
  double mean_eff = DiskAverage(
      node.pos, radius, cap.quadrature_angles, cap.quadrature_radii,
      [&](const Point& x) {
        double sig_w = DbmToWatts(ReceivedPowerDbm(
            node.params.tx_power_dbm, PlanarDistanceKm(node.pos, x),
            node.params));
        double interf_w = 0.0;
        if (interferer != nullptr)
          interf_w = DbmToWatts(ReceivedPowerDbm(
              interferer->params.tx_power_dbm,
              PlanarDistanceKm(interferer->pos, x), interferer->params));
        return std::log2(1.0 + sig_w / (noise_w + interf_w));
      });
  return cap.channel_bandwidth_hz * mean_eff;
}

}  // namespace

double CapacityMbps(const GaaNode& node, int block_len,
                    const CapacityParams& cap) {
  if (block_len < 1) throw std::invalid_argument("block_len must be >= 1");
  ValidateCapacityParams(cap);
  return block_len * PerChannelRateBps(node, nullptr, cap) / 1e6;
}

double CapacityLossMbps(const Vertex& interferer, const Vertex& victim,
                        const GaaScenario& s, const CapacityParams& cap) {
  ValidateCapacityParams(cap);
  if (interferer.members.size() != 1 || victim.members.size() != 1)
    throw std::invalid_argument("capacity loss defined for singletons");
  int overlap = interferer.block.Overlap(victim.block);
  if (overlap == 0) return 0.0;
  const GaaNode& v = s.NodeById(victim.members[0]);
  const GaaNode& i = s.NodeById(interferer.members[0]);
  double clean = PerChannelRateBps(v, nullptr, cap);
  double hit = PerChannelRateBps(v, &i, cap);
  return overlap * (clean - hit) / 1e6;
}

double InterferencePenaltyW(const Vertex& src, const Vertex& dst,
                            const GaaScenario& s, bool at_contour) {
  int overlap = src.block.Overlap(dst.block);
  if (overlap == 0) return 0.0;
  if (src.members.size() != 1 || dst.members.size() != 1)
    throw std::invalid_argument("interference penalty defined for singletons");
  const GaaNode& a = s.NodeById(src.members[0]);
  const GaaNode& b = s.NodeById(dst.members[0]);
  double d = PlanarDistanceKm(a.pos, b.pos);
  if (at_contour) {
    double r = ContourRadiusKm(b.params.tx_power_dbm,
                               b.params.service_threshold_dbm, b.params);
    d = std::max(d - r, 0.0);
  }
  double watts =
      DbmToWatts(ReceivedPowerDbm(a.params.tx_power_dbm, d, a.params));
  return watts * overlap;
}

double RewardValue(const Vertex& v, RewardKind kind, const GaaScenario& s,
                   const CapacityParams& cap) {
  double n_members = static_cast<double>(v.members.size());
  double n_chans = static_cast<double>(v.block.len);
  switch (kind) {
    case RewardKind::kUnit:
      return n_members;
    case RewardKind::kLinear:
      return n_members * n_chans;
    case RewardKind::kLog:
      return n_members * (1.0 + std::log(n_chans));
    case RewardKind::kCapacity: {
      if (v.members.size() != 1)
        throw std::invalid_argument("capacity reward defined for singletons");
      return CapacityMbps(s.NodeById(v.members[0]), v.block.len, cap);
    }
  }
  throw std::invalid_argument("bad reward kind");
}

ConflictGraph BuildUtilityGraph(const GaaScenario& s,
                                const UtilityGraphOptions& opt) {
  ValidateCapacityParams(opt.cap);
  // Per-channel quantities depend only on node geometry, so hoist them out of
  // the per-block-pair model.
  std::vector<double> per_channel_rate;  // bit/s, capacity modes only
  bool needs_rate = opt.reward == RewardKind::kCapacity ||
                    opt.penalty == PenaltyKind::kCapacityLoss;
  if (needs_rate) {
    per_channel_rate.reserve(s.nodes.size());
    for (const GaaNode& n : s.nodes)
      per_channel_rate.push_back(PerChannelRateBps(n, nullptr, opt.cap));
  }
  // (victim index, interferer index) -> per-channel rate under interference.
  std::vector<std::vector<double>> hit_rate;
  if (opt.penalty == PenaltyKind::kCapacityLoss) {
    size_t m = s.nodes.size();
    hit_rate.assign(m, std::vector<double>(m, 0.0));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        if (ClassifyConflict(s.nodes[i], s.nodes[j]) == ConflictClass::kNone)
          continue;
        hit_rate[i][j] = PerChannelRateBps(s.nodes[i], &s.nodes[j], opt.cap);
      }
  }

  PenaltyModel model;
  if (opt.penalty == PenaltyKind::kInterference) {
    model = [&s, &opt](const Vertex& src, const Vertex& dst) {
      return InterferencePenaltyW(src, dst, s, opt.interference_at_contour);
    };
  } else {
    model = [&s, &per_channel_rate, &hit_rate](const Vertex& src,
                                               const Vertex& dst) {
      int overlap = src.block.Overlap(dst.block);
      if (overlap == 0) return 0.0;
      int vi = s.NodeIndex(dst.members[0]);
      int ij = s.NodeIndex(src.members[0]);
      return overlap * (per_channel_rate[vi] - hit_rate[vi][ij]) / 1e6;
    };
  }
  bool normalize = opt.penalty == PenaltyKind::kInterference;
  ConflictGraph g = BuildNonbinaryGraph(s, model, normalize);

  for (Vertex& v : g.vertices) {
    if (opt.reward == RewardKind::kCapacity) {
      int idx = s.NodeIndex(v.members[0]);
      v.reward = v.block.len * per_channel_rate[idx] / 1e6;
    } else {
      v.reward = RewardValue(v, opt.reward, s, opt.cap);
    }
  }
  return g;
}

double Utility(const ConflictGraph& g, const std::vector<int>& selected,
               double lambda) {
  std::vector<char> in(g.VertexCount(), 0);
  for (int v : selected) {
    if (v < 0 || v >= g.VertexCount())
      throw std::invalid_argument("selected vertex out of range");
    if (in[v]) throw std::invalid_argument("duplicate selected vertex");
    in[v] = 1;
  }
  double total = 0.0;
  for (int v : selected) {
    total += g.vertices[v].reward;
    for (const auto& [w, p] : g.penalty_out[v])
      if (in[w]) total -= lambda * p;
  }
  return total;
}

double MarginalUtility(const ConflictGraph& g, const std::vector<int>& selected,
                       int v, double lambda) {
  std::vector<char> in(g.VertexCount(), 0);
  for (int u : selected) in[u] = 1;
  if (in[v]) throw std::invalid_argument("vertex already selected");
  double pen = 0.0;
  for (const auto& [w, p] : g.penalty_out[v])
    if (in[w]) pen += p;
  for (int u : selected) pen += g.Penalty(u, v);
  return g.vertices[v].reward - lambda * pen;
}

std::vector<double> GmwisWeights(const ConflictGraph& g, double lambda) {
  std::vector<double> w(g.VertexCount());
  for (int v = 0; v < g.VertexCount(); ++v)
    w[v] = g.vertices[v].reward +
           lambda * static_cast<double>(g.vertices[v].members.size());
  return w;
}

}  // namespace cbrsca
