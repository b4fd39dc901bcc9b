#include "coex/mac.hpp"

#include <algorithm>
#include <stdexcept>

#include "coex/units.hpp"

namespace coex {

namespace {

// Fisher-Yates with our own draws; std::shuffle is implementation-defined.
void shuffle_ids(std::vector<int>& ids, Rng& rng) {
  for (int i = static_cast<int>(ids.size()) - 1; i > 0; --i) {
    int j = rng.uniform_int(0, i);
    std::swap(ids[i], ids[j]);
  }
}

// Descending sort by key with uniform tie-breaking: shuffle first, then a
// stable sort leaves ties in shuffled order.
template <typename Key>
std::vector<int> ranked_ids(std::size_t n, Rng& rng, Key key) {
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
  shuffle_ids(ids, rng);
  std::stable_sort(ids.begin(), ids.end(),
                   [&key](int a, int b) { return key(a) > key(b); });
  return ids;
}

}  // namespace

bool SweepSchedule::in_sweep(double t) const {
  if (sweep_length >= rotation_period) return true;
  double dt = std::fmod(t - sweep_start, rotation_period);
  if (dt < 0.0) dt += rotation_period;
  return dt < sweep_length;
}

std::vector<std::vector<int>> assign_priorities(const DropLayout& layout,
                                                Rng& rng) {
  std::vector<std::vector<int>> priorities;
  priorities.reserve(layout.ap_positions.size());
  for (std::size_t k = 0; k < layout.ap_positions.size(); ++k) {
    std::vector<int> p;
    p.reserve(1 + layout.sta_positions[k].size());
    p.push_back(rng.uniform_int(4, 7));  // AP
    for (std::size_t i = 0; i < layout.sta_positions[k].size(); ++i)
      p.push_back(rng.uniform_int(0, 7));
    priorities.push_back(std::move(p));
  }
  return priorities;
}

const Node& select_tx_unmitigated(const std::vector<Node>& network,
                                  Scheme scheme, Rng& rng) {
  if (network.empty())
    throw std::invalid_argument("select_tx_unmitigated: empty network");
  if (scheme == Scheme::Csma)
    return network[rng.uniform_int(0, static_cast<int>(network.size()) - 1)];

  int best = network[0].priority;
  for (const Node& n : network) best = std::max(best, n.priority);
  std::vector<int> ties;
  for (std::size_t i = 0; i < network.size(); ++i)
    if (network[i].priority == best) ties.push_back(static_cast<int>(i));
  if (ties.size() == 1) return network[ties[0]];
  return network[ties[rng.uniform_int(0, static_cast<int>(ties.size()) - 1)]];
}

EligibilitySets mitigated_eligibility(const std::vector<Node>& network,
                                      std::span<const double> theta_w,
                                      double threshold_rad, Scheme scheme,
                                      Rng& rng) {
  if (network.empty())
    throw std::invalid_argument("mitigated_eligibility: empty network");
  if (theta_w.size() != network.size())
    throw std::invalid_argument("mitigated_eligibility: theta_w size mismatch");

  EligibilitySets sets;
  sets.threshold = threshold_rad;
  sets.by_angle = ranked_ids(network.size(), rng,
                             [&theta_w](int i) { return theta_w[i]; });
  sets.by_priority = ranked_ids(network.size(), rng, [&network](int i) {
    return network[i].priority;
  });

  int m = 0;
  for (double a : theta_w)
    if (a > threshold_rad) ++m;
  sets.m = m;

  if (scheme == Scheme::Csma) {
    sets.selected_order.assign(sets.by_angle.begin(), sets.by_angle.begin() + m);
    return sets;
  }

  // EDCA: intersect the m highest-angle nodes with the m highest-priority
  // nodes, keeping angle order.
  std::vector<char> in_top_priority(network.size(), 0);
  for (int i = 0; i < m; ++i) in_top_priority[sets.by_priority[i]] = 1;
  for (int i = 0; i < m; ++i) {
    int id = sets.by_angle[i];
    if (in_top_priority[id]) sets.selected_order.push_back(id);
  }
  return sets;
}

const Node& select_tx_mitigated(const std::vector<Node>& network,
                                std::span<const double> theta_w,
                                double threshold_rad, Scheme scheme,
                                Rng& rng) {
  EligibilitySets sets =
      mitigated_eligibility(network, theta_w, threshold_rad, scheme, rng);
  int id = sets.selected_order.empty() ? sets.by_angle.front()
                                       : sets.selected_order.front();
  return network[id];
}

SweepSchedule build_sweep_schedule(const RegionSpec& region,
                                   const RadarState& radar,
                                   double beamwidth_margin) {
  double d = distance(region.center, radar.origin);
  if (d < region.radius_region)
    throw std::invalid_argument(
        "build_sweep_schedule: radar inside the region (need d >= r_reg)");
  if (beamwidth_margin < 0.0)
    throw std::invalid_argument("build_sweep_schedule: negative margin");

  double ratio = region.radius_region / d;
  if (ratio > 1.0) ratio = 1.0;
  double width = 2.0 * std::asin(ratio) + beamwidth_margin;
  if (width > kTwoPi) width = kTwoPi;

  SweepSchedule schedule;
  schedule.rotation_period = 60.0 / radar.rpm;
  schedule.sweep_length = width / kTwoPi * schedule.rotation_period;

  double center_azimuth = wrap_two_pi(
      std::atan2(region.center.y - radar.origin.y, region.center.x - radar.origin.x));
  double crossing_t = center_azimuth / kTwoPi * schedule.rotation_period;
  double start = std::fmod(crossing_t - 0.5 * schedule.sweep_length,
                           schedule.rotation_period);
  if (start < 0.0) start += schedule.rotation_period;
  schedule.sweep_start = start;
  return schedule;
}

bool is_eligible_near_transition(double packet_duration, double time_to_sweep,
                                 double tau) {
  if (packet_duration < 0.0 || time_to_sweep < 0.0 || tau < 0.0)
    throw std::invalid_argument("is_eligible_near_transition: negative time");
  return packet_duration < tau;
}

}  // namespace coex
