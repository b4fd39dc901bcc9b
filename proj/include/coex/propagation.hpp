#pragma once

namespace coex {

// Over-water power law for the radar-to-shore paths, fitted at 3.5 GHz:
// gain = coefficient * d^-exponent with d in meters (about -95 dB at 1 km),
// capped at unity so the extrapolation below a few meters stays passive.
struct CoastalPathModel {
  double coefficient = 259.0;
  double exponent = 3.97;
};

// Urban-micro street-level model for links inside a network. NLOS by default.
struct UmiPathModel {
  double carrier_ghz = 3.5;
  bool line_of_sight = false;
};

struct NoiseBudget {
  double bandwidth_wifi_hz = 20e6;
  double bandwidth_radar_hz = 10e6;
  double noise_wifi_dbm = -100.99;
  double noise_radar_dbm = -104.0;
};

enum class System { Wifi, Radar };

// Linear power gains (unitless). Both throw std::invalid_argument outside
// their validity range: coastal needs d > 0, UMi needs d >= 1 m.
double coastal_path_gain(const CoastalPathModel& model, double d_meters);
double umi_path_loss_db(const UmiPathModel& model, double d_meters);
double umi_path_gain(const UmiPathModel& model, double d_meters);

double noise_power_dbm(const NoiseBudget& budget, System system);

}  // namespace coex
