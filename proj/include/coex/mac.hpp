#pragma once

#include <span>
#include <vector>

#include "coex/config.hpp"
#include "coex/geometry.hpp"
#include "coex/rng.hpp"

namespace coex {

enum class Role { Ap, Sta };

struct Node {
  int id = 0;  // index within its network; 0 is the AP
  Role role = Role::Sta;
  Point2D position;
  int priority = 0;          // EDCA user priority, 0..7
  double tx_power_dbm = 0.0;
  Point2D beam_target;       // where the array is steered
};

// Per-network contention snapshot used by the off-axis selection rule.
// by_priority / by_angle rank every node (descending, ties randomized).
// m counts nodes with theta_w above the threshold. selected_order is the
// transmit-eligible list in by_angle order; empty means the fallback
// (plain argmax of theta_w) applies.
struct EligibilitySets {
  std::vector<int> by_priority;
  std::vector<int> by_angle;
  std::vector<int> selected_order;
  double threshold = 0.0;  // radians
  int m = 0;
};

// Angular sweep window of one rotation: while the boresight is within the
// widened region-crossing arc, transmissions are gated.
struct SweepSchedule {
  double rotation_period = 0.0;
  double sweep_start = 0.0;     // seconds into the rotation, wrapped
  double sweep_length = 0.0;
  double mitigation_lead = 0.0; // tau, seconds

  double safe_length() const { return rotation_period - sweep_length; }
  bool in_sweep(double t) const;
};

// AP priorities uniform on 4..7, station priorities uniform on 0..7;
// result[k][0] is network k's AP.
std::vector<std::vector<int>> assign_priorities(const DropLayout& layout,
                                                Rng& rng);

// Contention without the off-axis rule: EDCA picks the max-priority node
// (ties uniform), CSMA/CA picks uniformly.
const Node& select_tx_unmitigated(const std::vector<Node>& network,
                                  Scheme scheme, Rng& rng);

// Ranked sets for the off-axis rule. theta_w holds each node's off-axis
// angle, aligned with the network vector.
EligibilitySets mitigated_eligibility(const std::vector<Node>& network,
                                      std::span<const double> theta_w,
                                      double threshold_rad, Scheme scheme,
                                      Rng& rng);

// Winner under the off-axis rule: head of selected_order, or the largest
// theta_w when no node qualifies.
const Node& select_tx_mitigated(const std::vector<Node>& network,
                                std::span<const double> theta_w,
                                double threshold_rad, Scheme scheme, Rng& rng);

// Sweep window centered on the boresight crossing of the region center,
// spanning the arc subtended by the region plus a margin (radians).
// Requires the radar outside the region disc.
SweepSchedule build_sweep_schedule(const RegionSpec& region,
                                   const RadarState& radar,
                                   double beamwidth_margin);

// A packet may start near the sweep boundary only if it finishes within the
// control lead time tau. Arguments in seconds, all non-negative.
bool is_eligible_near_transition(double packet_duration, double time_to_sweep,
                                 double tau);

}  // namespace coex
