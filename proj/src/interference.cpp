#include "coex/interference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coex/units.hpp"

namespace coex {

Models make_models(const SimConfig& c) {
  Models m;
  m.wifi = WifiArrayPattern{c.wifi_element_gain_dbi, c.wifi_num_elements,
                            c.wifi_spacing_wl,
                            deg_to_rad(c.wifi_element_theta3db_deg),
                            c.wifi_front_back_db};
  m.radar = RadarPattern{c.radar_peak_gain_dbi, deg_to_rad(c.radar_theta3db_deg),
                         c.radar_sidelobe_db};
  m.coastal = CoastalPathModel{c.coastal_coeff, c.coastal_exp};
  m.umi = UmiPathModel{c.carrier_ghz, c.umi_los};
  m.noise = NoiseBudget{20e6, 10e6, c.noise_wifi_dbm, c.noise_radar_dbm};
  m.radar_tx_power_dbm = c.radar_tx_power_dbm;
  m.wtr_overlap = c.bandwidth_overlap ? 0.5 : 1.0;
  return m;
}

RegionSpec region_spec(const SimConfig& c) {
  return RegionSpec{{c.d, 0.0}, c.r_reg, c.r_net};
}

LinkSample individual_link(const Node& tx, const RadarState& radar, double t,
                           const Models& models) {
  LinkSample s;
  s.tx = tx;
  s.rx_kind = RxKind::Radar;
  s.theta_w = off_axis_wifi(tx.position, tx.beam_target, radar.origin);
  RadarState at_t = radar;
  at_t.boresight_angle = boresight_at(radar, t);
  s.theta_r = off_axis_radar(tx.position, at_t);
  s.path_gain = coastal_path_gain(models.coastal, distance(tx.position, radar.origin));
  s.power_rx = db_to_linear(tx.tx_power_dbm) * wifi_gain(models.wifi, s.theta_w) *
               radar_gain(models.radar, s.theta_r) * s.path_gain *
               models.wtr_overlap;
  return s;
}

double individual_interference(const Node& tx, const RadarState& radar,
                               double t, const Models& models) {
  return individual_link(tx, radar, t, models).power_rx;
}

double aggregate_wtr(const DropLayout& layout, std::span<const Node> winners,
                     const RadarState& radar, double t, const Models& models) {
  if (winners.size() != layout.ap_positions.size())
    throw std::invalid_argument("aggregate_wtr: one winner per network required");
  double sum = 0.0;
  for (const Node& w : winners)
    sum += individual_interference(w, radar, t, models);
  return sum;
}

namespace {

// Rotation-independent factors of one winner: c = P * G_tx(theta_w) * path,
// plus its azimuth as seen from the radar. The scan then only has to look up
// the radar gain at the current angular separation.
struct ScanSet {
  std::vector<double> azimuth;  // sorted, duplicated with +2pi for wraparound
  std::vector<double> c;        // aligned with azimuth
  double total_c = 0.0;
};

ScanSet build_scan_set(std::span<const Node> winners, const RadarState& radar,
                       const Models& models) {
  std::vector<std::pair<double, double>> terms;
  terms.reserve(winners.size());
  for (const Node& w : winners) {
    double theta_w = off_axis_wifi(w.position, w.beam_target, radar.origin);
    double c = db_to_linear(w.tx_power_dbm) * wifi_gain(models.wifi, theta_w) *
               coastal_path_gain(models.coastal, distance(w.position, radar.origin)) *
               models.wtr_overlap;
    Point2D rel = w.position - radar.origin;
    terms.emplace_back(wrap_two_pi(std::atan2(rel.y, rel.x)), c);
  }
  std::sort(terms.begin(), terms.end());

  ScanSet set;
  set.azimuth.reserve(2 * terms.size());
  set.c.reserve(2 * terms.size());
  for (const auto& [az, c] : terms) {
    set.azimuth.push_back(az);
    set.c.push_back(c);
    set.total_c += c;
  }
  for (const auto& [az, c] : terms) {
    set.azimuth.push_back(az + kTwoPi);
    set.c.push_back(c);
  }
  return set;
}

// Beyond floor_reach_angle the dish gain is exactly the sidelobe floor, so
// the sum splits into floor * total_c plus corrections from the few nodes
// inside the mainlobe window. Falls back to the dense sum when the pattern
// has no flat floor to exploit.
double aggregate_at(const ScanSet& set, double phi, const RadarPattern& pattern,
                    double floor_lin, double reach) {
  std::size_t n = set.azimuth.size() / 2;
  if (n == 0) return 0.0;
  if (reach >= kPi) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sep = std::fabs(phi - set.azimuth[i]);
      if (sep > kPi) sep = kTwoPi - sep;
      v += set.c[i] * radar_gain(pattern, sep);
    }
    return v;
  }
  double v = set.total_c * floor_lin;
  double query = phi < reach ? phi + kTwoPi : phi;
  auto lo = std::lower_bound(set.azimuth.begin(), set.azimuth.end(), query - reach);
  auto hi = std::upper_bound(lo, set.azimuth.end(), query + reach);
  for (auto it = lo; it != hi; ++it) {
    std::size_t i = static_cast<std::size_t>(it - set.azimuth.begin());
    double az = set.azimuth[i];
    if (az >= kTwoPi) az -= kTwoPi;
    double sep = std::fabs(phi - az);
    if (sep > kPi) sep = kTwoPi - sep;
    v += set.c[i] * (radar_gain(pattern, sep) - floor_lin);
  }
  return v;
}

RotationMax scan_rotation(const ScanSet& sweep_set, const ScanSet& safe_set,
                          const SweepSchedule* schedule, const RadarState& radar,
                          const Models& models, double time_step) {
  double period = 60.0 / radar.rpm;
  if (time_step <= 0.0)
    throw std::invalid_argument("rotation scan: time_step must be positive");
  long steps = std::lround(period / time_step);
  if (steps < 3600)
    throw std::invalid_argument(
        "rotation scan: resolution too coarse, need >= 3600 samples per rotation");

  double floor_lin = db_to_linear(models.radar.floor_gain_dbi());
  double reach = std::min(models.radar.floor_reach_angle(), kPi);

  RotationMax best{-1.0, 0.0};
  for (long k = 0; k < steps; ++k) {
    double frac = static_cast<double>(k) / static_cast<double>(steps);
    double t = period * frac;
    double phi = kTwoPi * frac;
    const ScanSet& set =
        (schedule && schedule->in_sweep(t)) ? sweep_set : safe_set;
    double v = aggregate_at(set, phi, models.radar, floor_lin, reach);
    if (v > best.max_power) {
      best.max_power = v;
      best.argmax_t = t;
    }
  }
  if (best.max_power < 0.0) best.max_power = 0.0;
  return best;
}

}  // namespace

RotationMax max_over_rotation(const DropLayout& layout,
                              std::span<const Node> winners,
                              const RadarState& radar, const Models& models,
                              double time_step) {
  if (winners.size() != layout.ap_positions.size())
    throw std::invalid_argument("max_over_rotation: one winner per network required");
  ScanSet set = build_scan_set(winners, radar, models);
  return scan_rotation(set, set, nullptr, radar, models, time_step);
}

RotationMax max_over_rotation_scheduled(const DropLayout& layout,
                                        std::span<const Node> sweep_winners,
                                        std::span<const Node> safe_winners,
                                        const SweepSchedule& schedule,
                                        const RadarState& radar,
                                        const Models& models,
                                        double time_step) {
  if (sweep_winners.size() != layout.ap_positions.size() ||
      safe_winners.size() != layout.ap_positions.size())
    throw std::invalid_argument(
        "max_over_rotation_scheduled: one winner per network required");
  ScanSet sweep_set = build_scan_set(sweep_winners, radar, models);
  ScanSet safe_set = build_scan_set(safe_winners, radar, models);
  return scan_rotation(sweep_set, safe_set, &schedule, radar, models, time_step);
}

double mmai(std::span<const DropMetrics> drops) {
  if (drops.empty()) throw std::invalid_argument("mmai: no drops");
  std::vector<double> samples;
  samples.reserve(drops.size());
  for (const DropMetrics& d : drops) samples.push_back(d.mmai_sample);
  double sum = 0.0;
  for (double s : samples) sum += s;
  return sum / static_cast<double>(samples.size());
}

double rtw_interference(const DropLayout& layout, std::span<const Node> victims,
                        const RadarState& radar, double t,
                        const Models& models) {
  if (victims.size() != layout.ap_positions.size())
    throw std::invalid_argument("rtw_interference: one victim per network required");
  if (victims.empty()) return 0.0;
  RadarState at_t = radar;
  at_t.boresight_angle = boresight_at(radar, t);
  double p_radar = db_to_linear(models.radar_tx_power_dbm);
  double sum = 0.0;
  for (const Node& v : victims) {
    double theta_r = off_axis_radar(v.position, at_t);
    double theta_w = off_axis_wifi(v.position, v.beam_target, radar.origin);
    sum += p_radar * radar_gain(models.radar, theta_r) *
           wifi_gain(models.wifi, theta_w) *
           coastal_path_gain(models.coastal, distance(v.position, radar.origin));
  }
  return sum / static_cast<double>(victims.size());
}

SinrNppi sinr_and_nppi(const std::vector<Node>& network, const Node& winner,
                       double rtw_linear, Scheme scheme, const Models& models) {
  if (network.empty()) throw std::invalid_argument("sinr_and_nppi: empty network");
  if (rtw_linear < 0.0)
    throw std::invalid_argument("sinr_and_nppi: negative interference");

  // The receiver is whatever the winner is steered at; it steers back.
  Point2D rx_pos = winner.beam_target;
  double theta_tx = off_axis_wifi(winner.position, winner.beam_target, rx_pos);
  double theta_rx = 0.0;  // rx beam on the winner by construction

  double link = distance(winner.position, rx_pos);
  if (link < 1.0) link = 1.0;  // street-level model validity floor

  double signal = db_to_linear(winner.tx_power_dbm) *
                  wifi_gain(models.wifi, theta_tx) *
                  wifi_gain(models.wifi, theta_rx) *
                  umi_path_gain(models.umi, link);
  double noise = db_to_linear(noise_power_dbm(models.noise, System::Wifi));

  SinrNppi out;
  out.sinr = signal / (rtw_linear + noise);
  out.nppi = scheme == Scheme::Edca
                 ? out.sinr * static_cast<double>(winner.priority + 1) / 8.0
                 : out.sinr;
  return out;
}

double Annulus::area() const {
  return kPi * (r_outer * r_outer - r_inner * r_inner);
}

namespace {

// Simpson on r (log-spaced when the inner radius allows it) times a
// trapezoid in azimuth; plenty for the smooth integrands used here.
double integrate_over_annulus(const Annulus& region,
                              const std::function<double(Point2D)>& h) {
  constexpr int kRadial = 4001;   // odd, for Simpson
  constexpr int kAzimuth = 256;

  auto ring_value = [&](double r) {
    double acc = 0.0;
    for (int j = 0; j < kAzimuth; ++j) {
      double a = kTwoPi * (static_cast<double>(j) + 0.5) / kAzimuth;
      acc += h({region.center.x + r * std::cos(a),
                region.center.y + r * std::sin(a)});
    }
    return acc / kAzimuth * kTwoPi * r;
  };

  bool log_scale = region.r_inner > 0.0;
  double lo = log_scale ? std::log(region.r_inner) : region.r_inner;
  double hi = log_scale ? std::log(region.r_outer) : region.r_outer;
  double step = (hi - lo) / (kRadial - 1);

  double acc = 0.0;
  for (int i = 0; i < kRadial; ++i) {
    double u = lo + step * i;
    double r = log_scale ? std::exp(u) : u;
    double f = ring_value(r) * (log_scale ? r : 1.0);  // jacobian of u = ln r
    double w = (i == 0 || i == kRadial - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * f;
  }
  return acc * step / 3.0;
}

}  // namespace

CampbellCheck campbell_mean_oracle(double density_per_area,
                                   const Annulus& region,
                                   const std::function<double(Point2D)>& h,
                                   long trials, Rng& rng) {
  if (density_per_area <= 0.0)
    throw std::invalid_argument("campbell_mean_oracle: density must be positive");
  if (region.r_outer <= region.r_inner || region.r_inner < 0.0)
    throw std::invalid_argument("campbell_mean_oracle: bad annulus radii");
  if (trials < 2)
    throw std::invalid_argument("campbell_mean_oracle: need at least 2 trials");

  double mean_count = density_per_area * region.area();
  double r0sq = region.r_inner * region.r_inner;
  double r1sq = region.r_outer * region.r_outer;

  double sum = 0.0;
  double sum_sq = 0.0;
  for (long trial = 0; trial < trials; ++trial) {
    int count = rng.poisson(mean_count);
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
      double r = std::sqrt(r0sq + rng.uniform() * (r1sq - r0sq));
      double a = kTwoPi * rng.uniform();
      total += h({region.center.x + r * std::cos(a),
                  region.center.y + r * std::sin(a)});
    }
    sum += total;
    sum_sq += total * total;
  }

  CampbellCheck check;
  check.empirical_mean = sum / static_cast<double>(trials);
  double var = (sum_sq - sum * sum / static_cast<double>(trials)) /
               static_cast<double>(trials - 1);
  if (var < 0.0) var = 0.0;
  check.std_error = std::sqrt(var / static_cast<double>(trials));
  check.analytic_mean = density_per_area * integrate_over_annulus(region, h);
  return check;
}

}  // namespace coex
