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

#include "cbrsca/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace cbrsca {

namespace {

// COST-231 urban environment correction, in dB.
double EnvCorrectionDb(Environment env) {
  return env == Environment::kMetropolitan ? 3.0 : 0.0;
}

// Mobile antenna correction a(h_rx) for small/medium cities.
double RxAntennaCorrectionDb(double freq_mhz, double h_rx_m) {
  double lf = std::log10(freq_mhz);
  return (1.1 * lf - 0.7) * h_rx_m - (1.56 * lf - 0.8);
}

// Path loss decomposes as A + B * log10(d_km); A collects every
// distance-independent term.
void LossCoefficients(const RadioParams& p, double* a, double* b) {
  double lf = std::log10(p.freq_mhz);
  double lh = std::log10(p.h_tx_m);
  *a = 46.3 + 33.9 * lf - 13.82 * lh - RxAntennaCorrectionDb(p.freq_mhz, p.h_rx_m) +
       EnvCorrectionDb(p.env);
  *b = 44.9 - 6.55 * lh;
}

}  // namespace

void RadioParams::Validate() const {
  if (!(freq_mhz > 0)) throw std::invalid_argument("freq_mhz must be > 0");
  if (!(h_tx_m > 0)) throw std::invalid_argument("h_tx_m must be > 0");
  if (!(h_rx_m > 0)) throw std::invalid_argument("h_rx_m must be > 0");
  if (!(service_threshold_dbm < tx_power_dbm))
    throw std::invalid_argument("service threshold must be below tx power");
  if (!(interference_threshold_dbm < tx_power_dbm))
    throw std::invalid_argument("interference threshold must be below tx power");
  if (!(cs_threshold_dbm < tx_power_dbm))
    throw std::invalid_argument("cs threshold must be below tx power");
}

double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double WattsToDbm(double watts) {
  if (!(watts > 0)) throw std::invalid_argument("watts must be > 0");
  return 10.0 * std::log10(watts) + 30.0;
}

double PathLossDb(double d_km, const RadioParams& p) {
  if (d_km < 0) throw std::invalid_argument("distance must be >= 0");
  p.Validate();
  double a, b;
  LossCoefficients(p, &a, &b);
  double d = d_km < kMinDistanceKm ? kMinDistanceKm : d_km;
  return a + b * std::log10(d);
}

double ContourRadiusKm(double tx_power_dbm, double threshold_dbm,
                       const RadioParams& p) {
  if (!(threshold_dbm < tx_power_dbm))
    throw std::invalid_argument("threshold must be below tx power");
  p.Validate();
  double a, b;
  LossCoefficients(p, &a, &b);
  // Solve tx - (a + b*log10(d)) = threshold for d.
  return std::pow(10.0, (tx_power_dbm - threshold_dbm - a) / b);
}

double ReceivedPowerDbm(double tx_power_dbm, double d_km,
                        const RadioParams& p) {
  return tx_power_dbm - PathLossDb(d_km, p);
}

double PlanarDistanceKm(const Point& a, const Point& b) {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

Point ProjectLatLon(double lat_deg, double lon_deg, double ref_lat_deg,
                    double ref_lon_deg) {
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  double ref_lat_rad = ref_lat_deg * kDegToRad;
  Point out;
  out.x_km = kEarthRadiusKm * (lon_deg - ref_lon_deg) * kDegToRad *
             std::cos(ref_lat_rad);
  out.y_km = kEarthRadiusKm * (lat_deg - ref_lat_deg) * kDegToRad;
  return out;
}

}  // namespace cbrsca
