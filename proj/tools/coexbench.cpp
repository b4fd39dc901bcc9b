// Timing harness: parallel engine vs the serial reference (results must be
// bit-identical), and the windowed rotation scan vs a dense per-step sum.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "coex/engine.hpp"
#include "coex/mac.hpp"
#include "coex/rng.hpp"
#include "coex/units.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
  long drops = 300;
  if (argc > 1) {
    char* end = nullptr;
    drops = std::strtol(argv[1], &end, 10);
    if (end == argv[1] || *end != '\0' || drops < 1) {
      std::fprintf(stderr, "usage: %s [drops]\n", argv[0]);
      return 2;
    }
  }

  coex::SimConfig cfg;
  cfg.d = 3000.0;
  cfg.n_drops = drops;
  cfg.mitigation = true;
  cfg.seed = 99;

  std::printf("engine: %ld drops, lambda_ap=%d, lambda_sta=%d\n", drops,
              cfg.lambda_ap, cfg.lambda_sta);

  auto t0 = Clock::now();
  coex::RunResult serial = coex::run_serial(cfg);
  double t_serial = seconds_since(t0);

  t0 = Clock::now();
  coex::RunResult parallel = coex::run(cfg);
  double t_parallel = seconds_since(t0);

  bool identical =
      serial.mmai_mean_dbm == parallel.mmai_mean_dbm &&
      serial.nppi_sorted.size() == parallel.nppi_sorted.size() &&
      std::memcmp(serial.nppi_sorted.data(), parallel.nppi_sorted.data(),
                  serial.nppi_sorted.size() * sizeof(double)) == 0;

  std::printf("  serial    %8.3f s  (%.3f ms/drop)\n", t_serial,
              1e3 * t_serial / drops);
  std::printf("  parallel  %8.3f s  (%.3f ms/drop, speedup %.2fx)\n",
              t_parallel, 1e3 * t_parallel / drops, t_serial / t_parallel);
  std::printf("  results   %s\n", identical ? "bit-identical" : "MISMATCH");

  // Rotation scan: the library's windowed max vs summing every winner at
  // every grid step through the public aggregate.
  coex::SimConfig scan_cfg = cfg;
  scan_cfg.n_drops = 1;
  coex::Models models = coex::make_models(scan_cfg);
  coex::RadarState radar{{0.0, 0.0}, scan_cfg.rho_rpm, 0.0};
  coex::Rng layout_rng(coex::derive_stream(scan_cfg.seed, 0, 1));
  coex::DropLayout layout = coex::sample_drop(scan_cfg, layout_rng);
  coex::Rng prio_rng(coex::derive_stream(scan_cfg.seed, 0, 2));
  std::vector<std::vector<int>> priorities =
      coex::assign_priorities(layout, prio_rng);

  std::vector<coex::Node> winners;
  for (std::size_t k = 0; k < layout.ap_positions.size(); ++k) {
    winners.push_back(coex::Node{0, coex::Role::Ap, layout.ap_positions[k],
                                 priorities[k][0], scan_cfg.ap_tx_power_dbm,
                                 layout.sta_positions[k][0]});
  }

  double step = scan_cfg.effective_time_step();
  int reps = 20;

  t0 = Clock::now();
  coex::RotationMax fast{};
  for (int r = 0; r < reps; ++r)
    fast = coex::max_over_rotation(layout, winners, radar, models, step);
  double t_fast = seconds_since(t0) / reps;

  t0 = Clock::now();
  double dense_max = 0.0;
  long steps = std::lround(scan_cfg.rotation_period() / step);
  for (long s = 0; s < steps; ++s) {
    double t = scan_cfg.rotation_period() * static_cast<double>(s) /
               static_cast<double>(steps);
    double v = coex::aggregate_wtr(layout, winners, radar, t, models);
    if (v > dense_max) dense_max = v;
  }
  double t_dense = seconds_since(t0);

  double rel = std::fabs(fast.max_power - dense_max) / dense_max;
  std::printf("rotation scan over %ld steps, %zu winners\n", steps,
              winners.size());
  std::printf("  windowed  %8.3f ms\n", 1e3 * t_fast);
  std::printf("  dense     %8.3f ms  (speedup %.1fx)\n", 1e3 * t_dense,
              t_dense / t_fast);
  std::printf("  max rel diff %.2e %s\n", rel, rel < 1e-9 ? "(agree)" : "(MISMATCH)");
  return identical && rel < 1e-9 ? 0 : 1;
}
