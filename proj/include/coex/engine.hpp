#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coex/config.hpp"
#include "coex/interference.hpp"

namespace coex {

struct RunResult {
  SimConfig config;
  long drop_count = 0;
  double mmai_mean_dbm = 0.0;        // 10 log10 of the mean rotation max
  double inr_mean_db = 0.0;          // mmai_mean_dbm minus radar noise floor
  std::vector<double> mmai_samples;  // per drop, linear mW, drop order
  std::vector<double> nppi_sorted;   // all network samples, linear, ascending
  std::vector<double> nppi_sorted_db;
  long fallback_count = 0;
  long violation_count = 0;
  long mitigated_selections = 0;
  double wall_time_s = 0.0;
};

// One full Monte Carlo run. Drops are independent and carry their own RNG
// streams, so the result is identical for any worker count; aggregation
// happens in drop order with pairwise summation.
RunResult run(const SimConfig& config);

// Plain-loop reference for the parallel path; must agree bit for bit.
RunResult run_serial(const SimConfig& config);

enum class SweepAxis { Distance, Threshold };

// One run per value, seed = base.seed + value index so curves within one
// sweep stay decorrelated while reruns reproduce exactly.
std::vector<RunResult> sweep_parameter(const SimConfig& base, SweepAxis axis,
                                       std::span<const double> values);

// Fraction of samples <= x; samples must be sorted ascending and non-empty.
double empirical_cdf(std::span<const double> sorted_samples, double x);

// Deterministic, order-fixed reduction with O(log n) rounding depth.
double pairwise_sum(std::span<const double> values);

}  // namespace coex
