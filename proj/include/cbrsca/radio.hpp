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

#ifndef CBRSCA_RADIO_HPP_
#define CBRSCA_RADIO_HPP_

#include <string>

namespace cbrsca {

// Propagation environment correction for the COST-231 Hata model.
enum class Environment { kMetropolitan, kMediumCity };

struct RadioParams {
  double freq_mhz = 3600.0;
  double tx_power_dbm = 30.0;
  double h_tx_m = 3.0;
  double h_rx_m = 1.5;
  // Received-power thresholds: service contour, harmful interference, and
  // carrier-sense detection.
  double service_threshold_dbm = -96.0;
  double interference_threshold_dbm = -80.0;
  double cs_threshold_dbm = -75.0;
  Environment env = Environment::kMetropolitan;

  void Validate() const;  // throws std::invalid_argument
};

struct Point {
  double x_km = 0.0;
  double y_km = 0.0;
};

// Distances below this are clamped before the log to keep the model finite.
inline constexpr double kMinDistanceKm = 0.001;
inline constexpr double kEarthRadiusKm = 6371.0;

double DbmToWatts(double dbm);
double WattsToDbm(double watts);

// COST-231 Hata path loss in dB at distance d_km (clamped to kMinDistanceKm).
double PathLossDb(double d_km, const RadioParams& p);

// Radius at which received power from a tx_power_dbm transmitter falls to
// threshold_dbm: the closed-form inverse of the path-loss equation.
// Requires threshold_dbm < tx_power_dbm.
double ContourRadiusKm(double tx_power_dbm, double threshold_dbm,
                       const RadioParams& p);

// Received power in dBm at distance d_km from a transmitter.
double ReceivedPowerDbm(double tx_power_dbm, double d_km,
                        const RadioParams& p);

double PlanarDistanceKm(const Point& a, const Point& b);

// Equirectangular projection of (lat, lon) around a reference point; adequate
// for the few-km regions this engine deals with.
Point ProjectLatLon(double lat_deg, double lon_deg, double ref_lat_deg,
                    double ref_lon_deg);

}  // namespace cbrsca

#endif  // CBRSCA_RADIO_HPP_
