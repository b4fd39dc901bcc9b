#pragma once

#include <functional>
#include <span>
#include <vector>

#include "coex/antenna.hpp"
#include "coex/config.hpp"
#include "coex/geometry.hpp"
#include "coex/mac.hpp"
#include "coex/propagation.hpp"

namespace coex {

// Everything the physics needs, bundled so hot loops take one argument.
struct Models {
  WifiArrayPattern wifi;
  RadarPattern radar;
  CoastalPathModel coastal;
  UmiPathModel umi;
  NoiseBudget noise;
  double radar_tx_power_dbm = 90.0;
  double wtr_overlap = 1.0;  // spectral capture of Wi-Fi power in the radar band
};

Models make_models(const SimConfig& config);
RegionSpec region_spec(const SimConfig& config);

enum class RxKind { Radar, Wifi };

// One evaluated link with its factors kept separate for inspection.
struct LinkSample {
  Node tx;
  RxKind rx_kind = RxKind::Radar;
  double theta_w = 0.0;    // tx off-axis angle, radians
  double theta_r = 0.0;    // receiver-side off-axis angle, radians
  double path_gain = 0.0;  // linear
  double power_rx = 0.0;   // linear mW
};

// Wi-Fi transmitter into the radar receiver at rotation time t.
LinkSample individual_link(const Node& tx, const RadarState& radar, double t,
                           const Models& models);
double individual_interference(const Node& tx, const RadarState& radar,
                               double t, const Models& models);

// Sum over one winner per network. winners.size() must match the layout.
double aggregate_wtr(const DropLayout& layout, std::span<const Node> winners,
                     const RadarState& radar, double t, const Models& models);

struct RotationMax {
  double max_power = 0.0;  // linear mW
  double argmax_t = 0.0;   // seconds into the rotation
};

// Max of aggregate_wtr over one full rotation on a uniform time grid.
// time_step must give at least 3600 samples per rotation.
RotationMax max_over_rotation(const DropLayout& layout,
                              std::span<const Node> winners,
                              const RadarState& radar, const Models& models,
                              double time_step);

// Same scan but the active winner set follows the sweep schedule:
// sweep_winners inside the gated window, safe_winners elsewhere.
RotationMax max_over_rotation_scheduled(const DropLayout& layout,
                                        std::span<const Node> sweep_winners,
                                        std::span<const Node> safe_winners,
                                        const SweepSchedule& schedule,
                                        const RadarState& radar,
                                        const Models& models,
                                        double time_step);

struct NetworkMetrics {
  double sinr = 0.0;  // linear
  double nppi = 0.0;  // linear, priority-weighted under EDCA
  int winner_id = 0;
  int winner_priority = 0;
};

struct DropMetrics {
  double mmai_sample = 0.0;  // per-drop rotation max, linear mW
  double inr_db = 0.0;
  std::vector<NetworkMetrics> per_network;
  long fallback_count = 0;       // networks where no node cleared the threshold
  long violation_count = 0;      // sweep winners below threshold despite m > 0
  long mitigated_selections = 0;
};

// Mean of the per-drop rotation maxima, linear mW.
double mmai(std::span<const DropMetrics> drops);

// Radar power averaged over the victim receivers, one per network, at
// rotation time t. victims.size() must match the layout.
double rtw_interference(const DropLayout& layout, std::span<const Node> victims,
                        const RadarState& radar, double t,
                        const Models& models);

struct SinrNppi {
  double sinr = 0.0;
  double nppi = 0.0;
};

// Link budget for the winner toward its beam target, against radar
// interference rtw_linear plus thermal noise. Link distance is floored at
// 1 m, the street-level model's validity limit.
SinrNppi sinr_and_nppi(const std::vector<Node>& network, const Node& winner,
                       double rtw_linear, Scheme scheme, const Models& models);

struct Annulus {
  Point2D center;
  double r_inner = 0.0;
  double r_outer = 0.0;
  double area() const;
};

struct CampbellCheck {
  double empirical_mean = 0.0;
  double analytic_mean = 0.0;
  double std_error = 0.0;
};

// Mean of sum h(x) over a homogeneous Poisson process of the given density,
// estimated empirically over `trials` realizations and analytically as
// density times the integral of h over the region. The two agreeing is the
// ground truth the aggregate interference machinery is checked against.
CampbellCheck campbell_mean_oracle(double density_per_area,
                                   const Annulus& region,
                                   const std::function<double(Point2D)>& h,
                                   long trials, Rng& rng);

}  // namespace coex
