#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coex {

enum class Scheme { Edca, Csma };

std::string scheme_name(Scheme scheme);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All scenario knobs. Distances are meters, powers dBm, angles degrees at
// this boundary (radians everywhere past it), times seconds.
struct SimConfig {
  double d = 0.0;                // radar to region-center distance; must be set
  double r_reg = 1000.0;         // deployment region radius
  double r_net = 112.8379167;    // per-network radius, ~0.04 km^2
  int lambda_ap = 100;           // networks (APs) per drop
  int lambda_sta = 10;           // stations per network
  Scheme scheme = Scheme::Edca;
  bool mitigation = false;
  double theta_deg = 30.0;       // off-axis eligibility threshold
  double rho_rpm = 15.0;         // radar rotation speed
  double tau = 1e-3;             // transmit-control lead time, seconds
  double beam_margin_deg = -1.0; // sweep widening; -1 covers the mainlobe roll-off
  long n_drops = 10000;
  double time_step = 0.0;        // rotation scan step; 0 = period / 3600
  std::uint64_t seed = 1;
  int threads = 0;               // 0 = library default

  double wifi_element_gain_dbi = 2.15;
  int wifi_num_elements = 4;
  double wifi_spacing_wl = 0.5;  // element spacing in wavelengths
  double wifi_element_theta3db_deg = 65.0;
  double wifi_front_back_db = 30.0;
  double radar_peak_gain_dbi = 33.5;
  double radar_theta3db_deg = 2.0;
  double radar_sidelobe_db = 43.5;  // floor depth below peak
  double radar_tx_power_dbm = 90.0;
  double ap_tx_power_dbm = 30.0;
  double sta_tx_power_dbm = 10.0;
  double coastal_coeff = 259.0;
  double coastal_exp = 3.97;
  double carrier_ghz = 3.5;
  bool umi_los = false;
  double noise_wifi_dbm = -100.99;
  double noise_radar_dbm = -104.0;
  bool bandwidth_overlap = false;  // halve radar-band capture of Wi-Fi power
  bool poisson_counts = false;     // Poisson-distributed drop sizes
  double pos_error_sigma = 0.0;    // std of reported-position error, meters
  bool rtw_full_rotation = false;  // average victim-side metrics over a rotation

  double rotation_period() const { return 60.0 / rho_rpm; }
  double effective_time_step() const {
    return time_step > 0.0 ? time_step : rotation_period() / 3600.0;
  }
  // Default margin keeps the window open until every in-region node has
  // dropped onto the radar sidelobe floor (the roll-off reach, both sides).
  double effective_beam_margin_deg() const {
    if (beam_margin_deg >= 0.0) return beam_margin_deg;
    return 2.0 * radar_theta3db_deg * std::sqrt(radar_sidelobe_db / 12.0);
  }
};

// key=value file, '#' comments, later keys win. Throws ConfigError with file
// and line context.
SimConfig parse_config_file(const std::string& path);

// Shared by the file parser and command-line overrides.
void set_config_field(SimConfig& config, const std::string& key,
                      const std::string& value);

// Empty when valid; one message per violated constraint.
std::vector<std::string> config_violations(const SimConfig& config);

// Throws ConfigError listing every violation at once.
void validate_config(const SimConfig& config);

// Canonical key=value text; parse_config of the output round-trips.
std::string serialize_config(const SimConfig& config);

// FNV-1a over the canonical serialization. Stamped into CSV headers so runs
// can be traced back to their exact settings.
std::uint64_t config_hash(const SimConfig& config);

}  // namespace coex
