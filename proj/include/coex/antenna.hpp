#pragma once

#include <cmath>

#include "coex/units.hpp"

namespace coex {

// Uniform linear array steered broadside; gains are linear power relative to
// isotropic. With 4 elements at half-wavelength spacing and 2.15 dBi per
// element the peak works out to 8.17 dBi with nulls at 30 and 90 deg off the
// steering direction.
//
// Each element is a sector element in the 3GPP TR 38.901 style: parabolic
// roll-off of 12*(theta/theta3db)^2 dB capped at a front-to-back floor. A bare
// isotropic-element array would radiate a full-strength lobe straight
// backwards, which no panel-mounted outdoor array does. Behind the array
// plane (past 90 deg) the composite never drops below peak minus the
// front-to-back ratio: a reflector-backed panel leaks a diffuse, roughly
// structureless floor rearward instead of mirroring the array factor.
struct WifiArrayPattern {
  double element_gain_dbi = 2.15;
  int num_elements = 4;
  double element_spacing = 0.5;            // wavelengths
  double element_theta3db = deg_to_rad(65.0);  // element roll-off scale, radians
  double front_back_db = 30.0;             // element attenuation floor

  double peak_gain_dbi() const {
    return element_gain_dbi + 10.0 * std::log10(static_cast<double>(num_elements));
  }
};

// Rotating dish: parabolic mainlobe 12*(theta/theta3db)^2 dB down, clipped at
// a constant sidelobe floor. Defaults give a 33.5 dBi peak and a -10 dBi
// floor.
struct RadarPattern {
  double peak_gain_dbi = 33.5;
  double theta3db = deg_to_rad(2.0);   // half-power beamwidth measure, radians
  double sidelobe_down_db = 43.5;      // floor depth below peak

  double floor_gain_dbi() const { return peak_gain_dbi - sidelobe_down_db; }

  // off-axis angle beyond which the gain sits exactly on the floor
  double floor_reach_angle() const {
    return theta3db * std::sqrt(sidelobe_down_db / 12.0);
  }
};

// theta is the off-axis angle in radians; symmetric in sign.
double wifi_gain(const WifiArrayPattern& pattern, double theta);
double radar_gain(const RadarPattern& pattern, double theta);

}  // namespace coex
