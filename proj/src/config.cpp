#include "coex/config.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coex {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  long v = parse_long(key, value);
  if (v < INT_MIN || v > INT_MAX)
    throw ConfigError(key + ": value out of range: " + value);
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = lower(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

Scheme parse_scheme(const std::string& key, const std::string& value) {
  std::string v = lower(value);
  if (v == "edca") return Scheme::Edca;
  if (v == "csma") return Scheme::Csma;
  throw ConfigError(key + ": expected edca or csma, got '" + value + "'");
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::Edca ? "edca" : "csma";
}

void set_config_field(SimConfig& c, const std::string& key,
                      const std::string& value) {
  if (key == "d") c.d = parse_double(key, value);
  else if (key == "r_reg") c.r_reg = parse_double(key, value);
  else if (key == "r_net") c.r_net = parse_double(key, value);
  else if (key == "lambda_ap") c.lambda_ap = parse_int(key, value);
  else if (key == "lambda_sta") c.lambda_sta = parse_int(key, value);
  else if (key == "scheme") c.scheme = parse_scheme(key, value);
  else if (key == "mitigation") c.mitigation = parse_bool(key, value);
  else if (key == "theta_deg") c.theta_deg = parse_double(key, value);
  else if (key == "rho_rpm") c.rho_rpm = parse_double(key, value);
  else if (key == "tau") c.tau = parse_double(key, value);
  else if (key == "beam_margin_deg") c.beam_margin_deg = parse_double(key, value);
  else if (key == "n_drops") c.n_drops = parse_long(key, value);
  else if (key == "time_step") c.time_step = parse_double(key, value);
  else if (key == "seed") c.seed = parse_u64(key, value);
  else if (key == "threads") c.threads = parse_int(key, value);
  else if (key == "wifi_element_gain_dbi") c.wifi_element_gain_dbi = parse_double(key, value);
  else if (key == "wifi_num_elements") c.wifi_num_elements = parse_int(key, value);
  else if (key == "wifi_spacing_wl") c.wifi_spacing_wl = parse_double(key, value);
  else if (key == "wifi_element_theta3db_deg") c.wifi_element_theta3db_deg = parse_double(key, value);
  else if (key == "wifi_front_back_db") c.wifi_front_back_db = parse_double(key, value);
  else if (key == "radar_peak_gain_dbi") c.radar_peak_gain_dbi = parse_double(key, value);
  else if (key == "radar_theta3db_deg") c.radar_theta3db_deg = parse_double(key, value);
  else if (key == "radar_sidelobe_db") c.radar_sidelobe_db = parse_double(key, value);
  else if (key == "radar_tx_power_dbm") c.radar_tx_power_dbm = parse_double(key, value);
  else if (key == "ap_tx_power_dbm") c.ap_tx_power_dbm = parse_double(key, value);
  else if (key == "sta_tx_power_dbm") c.sta_tx_power_dbm = parse_double(key, value);
  else if (key == "coastal_coeff") c.coastal_coeff = parse_double(key, value);
  else if (key == "coastal_exp") c.coastal_exp = parse_double(key, value);
  else if (key == "carrier_ghz") c.carrier_ghz = parse_double(key, value);
  else if (key == "umi_los") c.umi_los = parse_bool(key, value);
  else if (key == "noise_wifi_dbm") c.noise_wifi_dbm = parse_double(key, value);
  else if (key == "noise_radar_dbm") c.noise_radar_dbm = parse_double(key, value);
  else if (key == "bandwidth_overlap") c.bandwidth_overlap = parse_bool(key, value);
  else if (key == "poisson_counts") c.poisson_counts = parse_bool(key, value);
  else if (key == "pos_error_sigma") c.pos_error_sigma = parse_double(key, value);
  else if (key == "rtw_full_rotation") c.rtw_full_rotation = parse_bool(key, value);
  else throw ConfigError("unknown key '" + key + "'");
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  SimConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value, got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      set_config_field(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

std::vector<std::string> config_violations(const SimConfig& c) {
  std::vector<std::string> v;
  if (c.d <= 0.0) v.push_back("d must be set to a positive radar distance in meters");
  if (c.r_reg <= 0.0) v.push_back("r_reg must be positive");
  if (c.r_net <= 0.0) v.push_back("r_net must be positive");
  if (c.r_net >= c.r_reg) v.push_back("r_net must be smaller than r_reg");
  if (c.d > 0.0 && c.d < c.r_reg)
    v.push_back("d must be at least r_reg (the radar sits outside the region)");
  if (c.lambda_ap < 1) v.push_back("lambda_ap must be at least 1");
  if (c.lambda_sta < 1) v.push_back("lambda_sta must be at least 1");
  if (c.theta_deg < 0.0 || c.theta_deg > 180.0)
    v.push_back("theta_deg must lie in [0, 180]");
  if (c.rho_rpm <= 0.0) v.push_back("rho_rpm must be positive");
  if (c.tau < 0.0) v.push_back("tau must be non-negative");
  if (c.beam_margin_deg < 0.0 && c.beam_margin_deg != -1.0)
    v.push_back("beam_margin_deg must be non-negative (or -1 for the default)");
  if (c.n_drops < 1) v.push_back("n_drops must be at least 1");
  if (c.time_step < 0.0) v.push_back("time_step must be non-negative");
  if (c.time_step > 0.0 && c.rotation_period() / c.time_step < 3600.0)
    v.push_back("time_step too coarse: need at least 3600 samples per rotation");
  if (c.threads < 0) v.push_back("threads must be non-negative");
  if (c.wifi_num_elements < 1) v.push_back("wifi_num_elements must be at least 1");
  if (c.wifi_spacing_wl <= 0.0) v.push_back("wifi_spacing_wl must be positive");
  if (c.wifi_element_theta3db_deg <= 0.0)
    v.push_back("wifi_element_theta3db_deg must be positive");
  if (c.wifi_front_back_db < 0.0) v.push_back("wifi_front_back_db must be non-negative");
  if (c.radar_peak_gain_dbi <= 22.0 || c.radar_peak_gain_dbi >= 48.0)
    v.push_back("radar_peak_gain_dbi outside the high-gain model range (22, 48)");
  if (c.radar_theta3db_deg <= 0.0) v.push_back("radar_theta3db_deg must be positive");
  if (c.radar_sidelobe_db <= 0.0) v.push_back("radar_sidelobe_db must be positive");
  if (c.coastal_coeff <= 0.0) v.push_back("coastal_coeff must be positive");
  if (c.coastal_exp <= 2.0)
    v.push_back("coastal_exp must exceed 2 for a finite aggregate mean");
  if (c.carrier_ghz <= 0.0) v.push_back("carrier_ghz must be positive");
  if (c.pos_error_sigma < 0.0) v.push_back("pos_error_sigma must be non-negative");
  return v;
}

void validate_config(const SimConfig& config) {
  std::vector<std::string> v = config_violations(config);
  if (v.empty()) return;
  std::string msg = "invalid config:";
  for (const std::string& s : v) msg += "\n  - " + s;
  throw ConfigError(msg);
}

std::string serialize_config(const SimConfig& c) {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  out << "d=" << num(c.d) << "\n";
  out << "r_reg=" << num(c.r_reg) << "\n";
  out << "r_net=" << num(c.r_net) << "\n";
  out << "lambda_ap=" << c.lambda_ap << "\n";
  out << "lambda_sta=" << c.lambda_sta << "\n";
  out << "scheme=" << scheme_name(c.scheme) << "\n";
  out << "mitigation=" << (c.mitigation ? "true" : "false") << "\n";
  out << "theta_deg=" << num(c.theta_deg) << "\n";
  out << "rho_rpm=" << num(c.rho_rpm) << "\n";
  out << "tau=" << num(c.tau) << "\n";
  out << "beam_margin_deg=" << num(c.beam_margin_deg) << "\n";
  out << "n_drops=" << c.n_drops << "\n";
  out << "time_step=" << num(c.time_step) << "\n";
  out << "seed=" << c.seed << "\n";
  // threads is an execution knob, not part of the scenario; leaving it out
  // keeps the hash stable across worker counts.
  out << "wifi_element_gain_dbi=" << num(c.wifi_element_gain_dbi) << "\n";
  out << "wifi_num_elements=" << c.wifi_num_elements << "\n";
  out << "wifi_spacing_wl=" << num(c.wifi_spacing_wl) << "\n";
  out << "wifi_element_theta3db_deg=" << num(c.wifi_element_theta3db_deg) << "\n";
  out << "wifi_front_back_db=" << num(c.wifi_front_back_db) << "\n";
  out << "radar_peak_gain_dbi=" << num(c.radar_peak_gain_dbi) << "\n";
  out << "radar_theta3db_deg=" << num(c.radar_theta3db_deg) << "\n";
  out << "radar_sidelobe_db=" << num(c.radar_sidelobe_db) << "\n";
  out << "radar_tx_power_dbm=" << num(c.radar_tx_power_dbm) << "\n";
  out << "ap_tx_power_dbm=" << num(c.ap_tx_power_dbm) << "\n";
  out << "sta_tx_power_dbm=" << num(c.sta_tx_power_dbm) << "\n";
  out << "coastal_coeff=" << num(c.coastal_coeff) << "\n";
  out << "coastal_exp=" << num(c.coastal_exp) << "\n";
  out << "carrier_ghz=" << num(c.carrier_ghz) << "\n";
  out << "umi_los=" << (c.umi_los ? "true" : "false") << "\n";
  out << "noise_wifi_dbm=" << num(c.noise_wifi_dbm) << "\n";
  out << "noise_radar_dbm=" << num(c.noise_radar_dbm) << "\n";
  out << "bandwidth_overlap=" << (c.bandwidth_overlap ? "true" : "false") << "\n";
  out << "poisson_counts=" << (c.poisson_counts ? "true" : "false") << "\n";
  out << "pos_error_sigma=" << num(c.pos_error_sigma) << "\n";
  out << "rtw_full_rotation=" << (c.rtw_full_rotation ? "true" : "false") << "\n";
  return out.str();
}

std::uint64_t config_hash(const SimConfig& config) {
  std::string s = serialize_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace coex
