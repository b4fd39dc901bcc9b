#include "coex/antenna.hpp"

namespace coex {

double wifi_gain(const WifiArrayPattern& pattern, double theta) {
  double n = static_cast<double>(pattern.num_elements);
  double half_psi = kPi * pattern.element_spacing * std::sin(theta);
  double den = std::sin(half_psi);
  double af2;
  if (std::fabs(den) < 1e-9) {
    af2 = n * n;  // broadside (and grating) limit of sin(N x)/sin(x)
  } else {
    double ratio = std::sin(n * half_psi) / den;
    af2 = ratio * ratio;
  }
  double rel = std::fabs(theta) / pattern.element_theta3db;
  double element_down = 12.0 * rel * rel;
  if (element_down > pattern.front_back_db) element_down = pattern.front_back_db;
  double gain = db_to_linear(pattern.element_gain_dbi - element_down) * af2 / n;
  if (std::fabs(theta) > 0.5 * kPi) {
    // Behind the array plane the reflector leaves no coherent array response,
    // only diffuse leakage at the front-to-back floor.
    double floor_gain = db_to_linear(pattern.peak_gain_dbi() - pattern.front_back_db);
    if (gain < floor_gain) gain = floor_gain;
  }
  return gain;
}

double radar_gain(const RadarPattern& pattern, double theta) {
  double off = std::fabs(theta);
  double rel = off / pattern.theta3db;
  double down = 12.0 * rel * rel;
  if (down > pattern.sidelobe_down_db) down = pattern.sidelobe_down_db;
  return db_to_linear(pattern.peak_gain_dbi - down);
}

}  // namespace coex
