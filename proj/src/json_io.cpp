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

#include "cbrsca/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cbrsca {

using nlohmann::json;

namespace {

json ChannelSetToJson(const ChannelSet& s) { return json(s.Channels()); }

ChannelSet ChannelSetFromJson(const json& j) {
  ChannelSet s;
  for (int c : j.get<std::vector<int>>()) s.Insert(c);
  return s;
}

json BlockToJson(const ChannelBlock& b) {
  return json{{"lo", b.lo}, {"len", b.len}};
}

ChannelBlock BlockFromJson(const json& j) {
  return ChannelBlock{j.at("lo").get<int>(), j.at("len").get<int>()};
}

json PointToJson(const Point& p) {
  return json{{"x_km", p.x_km}, {"y_km", p.y_km}};
}

Point PointFromJson(const json& j) {
  return Point{j.at("x_km").get<double>(), j.at("y_km").get<double>()};
}

}  // namespace

json RadioParamsToJson(const RadioParams& p) {
  return json{
      {"freq_mhz", p.freq_mhz},
      {"tx_power_dbm", p.tx_power_dbm},
      {"h_tx_m", p.h_tx_m},
      {"h_rx_m", p.h_rx_m},
      {"service_threshold_dbm", p.service_threshold_dbm},
      {"interference_threshold_dbm", p.interference_threshold_dbm},
      {"cs_threshold_dbm", p.cs_threshold_dbm},
      {"env", p.env == Environment::kMetropolitan ? "metropolitan"
                                                  : "medium_city"},
  };
}

RadioParams RadioParamsFromJson(const json& j) {
  RadioParams p;
  p.freq_mhz = j.value("freq_mhz", p.freq_mhz);
  p.tx_power_dbm = j.value("tx_power_dbm", p.tx_power_dbm);
  p.h_tx_m = j.value("h_tx_m", p.h_tx_m);
  p.h_rx_m = j.value("h_rx_m", p.h_rx_m);
  p.service_threshold_dbm =
      j.value("service_threshold_dbm", p.service_threshold_dbm);
  p.interference_threshold_dbm =
      j.value("interference_threshold_dbm", p.interference_threshold_dbm);
  p.cs_threshold_dbm = j.value("cs_threshold_dbm", p.cs_threshold_dbm);
  std::string env = j.value("env", std::string("metropolitan"));
  if (env == "metropolitan")
    p.env = Environment::kMetropolitan;
  else if (env == "medium_city")
    p.env = Environment::kMediumCity;
  else
    throw std::invalid_argument("unknown env: " + env);
  p.Validate();
  return p;
}

json ScenarioToJson(const ScenarioDoc& s) {
  json j;
  if (s.tier == ScenarioDoc::Tier::kPa) {
    j["tier"] = "pa";
    j["grid_width"] = s.pa.grid_width;
    j["channels"] = ChannelSetToJson(s.pa.channels);
    json areas = json::array();
    for (const ServiceArea& a : s.pa.areas)
      areas.push_back(json{{"id", a.id},
                           {"licensee_id", a.licensee_id},
                           {"tract_ids", a.tract_ids},
                           {"n_pals", a.n_pals},
                           {"availability", ChannelSetToJson(a.availability)}});
    j["areas"] = std::move(areas);
  } else {
    j["tier"] = "gaa";
    j["center"] = PointToJson(s.gaa.center);
    j["region_radius_km"] = s.gaa.region_radius_km;
    json nodes = json::array();
    for (const GaaNode& n : s.gaa.nodes)
      nodes.push_back(json{{"id", n.id},
                           {"pos", PointToJson(n.pos)},
                           {"params", RadioParamsToJson(n.params)},
                           {"availability", ChannelSetToJson(n.availability)},
                           {"demand_set", n.demand_set},
                           {"activity", n.activity}});
    j["nodes"] = std::move(nodes);
    json pas = json::array();
    for (const PaNode& p : s.gaa.pa_nodes)
      pas.push_back(json{{"pos", PointToJson(p.pos)},
                         {"block", BlockToJson(p.block)},
                         {"protect_radius_km", p.protect_radius_km}});
    j["pa_nodes"] = std::move(pas);
  }
  return j;
}

ScenarioDoc ScenarioFromJson(const json& j) {
  ScenarioDoc doc;
  std::string tier = j.at("tier").get<std::string>();
  if (tier == "pa") {
    doc.tier = ScenarioDoc::Tier::kPa;
    doc.pa.grid_width = j.at("grid_width").get<int>();
    if (doc.pa.grid_width < 1)
      throw std::invalid_argument("grid_width must be >= 1");
    doc.pa.channels = ChannelSetFromJson(j.at("channels"));
    for (const json& a : j.at("areas")) {
      ServiceArea area;
      area.id = a.at("id").get<int>();
      area.licensee_id = a.at("licensee_id").get<int>();
      area.tract_ids = a.at("tract_ids").get<std::vector<int>>();
      area.n_pals = a.at("n_pals").get<int>();
      area.availability = ChannelSetFromJson(a.at("availability"));
      if (area.n_pals < 1 || area.n_pals > kMaxBlockLen)
        throw std::invalid_argument("n_pals out of range");
      if (!std::is_sorted(area.tract_ids.begin(), area.tract_ids.end()))
        throw std::invalid_argument("tract_ids must be sorted");
      doc.pa.areas.push_back(std::move(area));
    }
  } else if (tier == "gaa") {
    doc.tier = ScenarioDoc::Tier::kGaa;
    doc.gaa.center = PointFromJson(j.at("center"));
    doc.gaa.region_radius_km = j.at("region_radius_km").get<double>();
    for (const json& nj : j.at("nodes")) {
      GaaNode n;
      n.id = nj.at("id").get<int>();
      n.pos = PointFromJson(nj.at("pos"));
      n.params = RadioParamsFromJson(nj.at("params"));
      n.availability = ChannelSetFromJson(nj.at("availability"));
      n.demand_set = nj.at("demand_set").get<std::vector<int>>();
      n.activity = nj.at("activity").get<double>();
      if (n.demand_set.empty() ||
          !std::is_sorted(n.demand_set.begin(), n.demand_set.end()))
        throw std::invalid_argument("demand_set must be sorted non-empty");
      if (!(n.activity >= 0))
        throw std::invalid_argument("activity must be >= 0");
      doc.gaa.nodes.push_back(std::move(n));
    }
    for (size_t i = 1; i < doc.gaa.nodes.size(); ++i)
      if (doc.gaa.nodes[i].id <= doc.gaa.nodes[i - 1].id)
        throw std::invalid_argument("nodes must be sorted by unique id");
    for (const json& pj : j.at("pa_nodes")) {
      PaNode p;
      p.pos = PointFromJson(pj.at("pos"));
      p.block = BlockFromJson(pj.at("block"));
      p.protect_radius_km = pj.at("protect_radius_km").get<double>();
      doc.gaa.pa_nodes.push_back(p);
    }
  } else {
    throw std::invalid_argument("unknown tier: " + tier);
  }
  return doc;
}

json GraphToJson(const ConflictGraph& g) {
  json j;
  json verts = json::array();
  for (const Vertex& v : g.vertices)
    verts.push_back(json{{"id", v.id},
                         {"members", v.members},
                         {"block", BlockToJson(v.block)},
                         {"reward", v.reward}});
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (int u = 0; u < g.VertexCount(); ++u)
    for (int v : g.adj[u])
      if (u < v) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  if (g.Clustered()) {
    j["clusters"] = g.clusters;
    json pens = json::array();
    for (int u = 0; u < g.VertexCount(); ++u)
      for (const auto& [v, p] : g.penalty_out[u])
        pens.push_back(json::array({u, v, p}));
    j["penalties"] = std::move(pens);
  }
  return j;
}

ConflictGraph GraphFromJson(const json& j) {
  ConflictGraph g;
  for (const json& vj : j.at("vertices")) {
    Vertex v;
    v.members = vj.at("members").get<std::vector<int>>();
    v.block = BlockFromJson(vj.at("block"));
    v.reward = vj.value("reward", 1.0);
    int id = vj.at("id").get<int>();
    g.AddVertex(std::move(v));
    if (g.vertices.back().id != id)
      throw std::invalid_argument("vertex ids must be dense and in order");
  }
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("edge must be [u, v]");
    g.AddEdge(e[0].get<int>(), e[1].get<int>());
  }
  if (j.contains("clusters")) {
    g.clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
    g.cluster_of.assign(g.VertexCount(), -1);
    for (size_t c = 0; c < g.clusters.size(); ++c)
      for (int v : g.clusters[c]) {
        if (v < 0 || v >= g.VertexCount())
          throw std::invalid_argument("cluster vertex out of range");
        g.cluster_of[v] = static_cast<int>(c);
      }
    for (const json& e : j.value("penalties", json::array())) {
      if (!e.is_array() || e.size() != 3)
        throw std::invalid_argument("penalty must be [u, v, p]");
      g.AddPenalty(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
  }
  g.Validate();
  return g;
}

json SolutionToJson(const Solution& s) {
  json j;
  j["selected"] = s.selected;
  j["objective"] = s.objective;
  json per_node = json::array();
  for (const auto& [id, block] : s.per_node)
    per_node.push_back(json{{"node", id}, {"block", BlockToJson(block)}});
  j["per_node"] = std::move(per_node);
  j["stats"] = json{{"name", s.stats.name},
                    {"iterations", s.stats.iterations},
                    {"evaluations", s.stats.evaluations},
                    {"accepted_moves", s.stats.accepted_moves},
                    {"runtime_ms", s.stats.runtime_ms}};
  return j;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cbrsca
