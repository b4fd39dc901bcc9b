#include "coex/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coex/mac.hpp"
#include "coex/rng.hpp"
#include "coex/units.hpp"

namespace coex {

namespace {

// One purpose per consumer of randomness; see derive_stream. Selection gets
// two streams so that toggling mitigation never changes the unmitigated
// winners of an otherwise identical run.
enum StreamPurpose : std::uint64_t {
  kLayout = 1,
  kPriorities = 2,
  kTargets = 3,
  kSelectUnmitigated = 4,
  kSelectMitigated = 5,
  kInstant = 6,
  kPositionError = 7,
};

Rng drop_rng(const SimConfig& cfg, long drop, StreamPurpose purpose) {
  return Rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(drop), purpose));
}

struct DropContext {
  std::vector<std::vector<Node>> networks;
  std::vector<std::vector<double>> theta_w;  // reported, for the selection rule
};

DropContext build_networks(const SimConfig& cfg, const DropLayout& layout,
                           long drop) {
  DropContext ctx;
  std::size_t n = layout.ap_positions.size();
  ctx.networks.reserve(n);

  Rng prio_rng = drop_rng(cfg, drop, kPriorities);
  std::vector<std::vector<int>> priorities = assign_priorities(layout, prio_rng);

  Rng target_rng = drop_rng(cfg, drop, kTargets);
  for (std::size_t k = 0; k < n; ++k) {
    const Point2D ap_pos = layout.ap_positions[k];
    const std::vector<Point2D>& stas = layout.sta_positions[k];
    std::vector<Node> net;
    net.reserve(1 + stas.size());

    // The AP serves one station per snapshot; with no stations (possible
    // under poisson_counts) it aims at the region center.
    Point2D ap_target = layout.region.center;
    if (!stas.empty()) ap_target = stas[target_rng.uniform_int(0, static_cast<int>(stas.size()) - 1)];
    net.push_back(Node{0, Role::Ap, ap_pos, priorities[k][0],
                       cfg.ap_tx_power_dbm, ap_target});
    for (std::size_t i = 0; i < stas.size(); ++i) {
      net.push_back(Node{static_cast<int>(i) + 1, Role::Sta, stas[i],
                         priorities[k][i + 1], cfg.sta_tx_power_dbm, ap_pos});
    }
    ctx.networks.push_back(std::move(net));
  }

  // Off-axis angles as the protocol sees them. With a positioning error the
  // rule acts on perturbed coordinates while the physics keeps the truth.
  std::vector<std::vector<Point2D>> reported;
  if (cfg.pos_error_sigma > 0.0) {
    Rng err_rng = drop_rng(cfg, drop, kPositionError);
    reported.reserve(n);
    for (const std::vector<Node>& net : ctx.networks) {
      std::vector<Point2D> pts;
      pts.reserve(net.size());
      for (const Node& node : net)
        pts.push_back({node.position.x + err_rng.normal(0.0, cfg.pos_error_sigma),
                       node.position.y + err_rng.normal(0.0, cfg.pos_error_sigma)});
      reported.push_back(std::move(pts));
    }
  }

  Point2D origin{0.0, 0.0};
  ctx.theta_w.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<Node>& net = ctx.networks[k];
    std::vector<double> angles(net.size(), 0.0);
    for (std::size_t i = 0; i < net.size(); ++i) {
      Point2D pos = net[i].position;
      Point2D target = net[i].beam_target;
      if (!reported.empty()) {
        pos = reported[k][i];
        // Each node steers at its peer's reported position too.
        target = net[i].role == Role::Ap ? net[i].beam_target : reported[k][0];
        if (net[i].role == Role::Ap) {
          for (std::size_t j = 1; j < net.size(); ++j)
            if (net[j].position == net[i].beam_target) target = reported[k][j];
        }
      }
      Point2D beam = target - pos;
      Point2D to_radar = origin - pos;
      if (norm(beam) < 1e-12 || norm(to_radar) < 1e-12) {
        angles[i] = 0.0;  // degenerate report; treat as worst case for the rule
      } else {
        angles[i] = angle_between(beam, to_radar);
      }
    }
    ctx.theta_w.push_back(std::move(angles));
  }
  return ctx;
}

Node victim_of(const std::vector<Node>& network, const Node& winner,
               double sta_tx_power_dbm) {
  if (winner.role == Role::Ap) {
    // Served station: steered back at the AP.
    return Node{-1, Role::Sta, winner.beam_target, 0, sta_tx_power_dbm,
                winner.position};
  }
  Node ap = network.front();
  ap.beam_target = winner.position;
  return ap;
}

DropMetrics simulate_drop(const SimConfig& cfg, const Models& models,
                          const SweepSchedule& schedule,
                          const RadarState& radar, long drop) {
  Rng layout_rng = drop_rng(cfg, drop, kLayout);
  DropLayout layout = sample_drop(cfg, layout_rng);
  DropContext ctx = build_networks(cfg, layout, drop);
  std::size_t n = ctx.networks.size();

  DropMetrics metrics;
  metrics.per_network.reserve(n);

  std::vector<Node> safe_winners;
  safe_winners.reserve(n);
  Rng unmit_rng = drop_rng(cfg, drop, kSelectUnmitigated);
  for (std::size_t k = 0; k < n; ++k)
    safe_winners.push_back(
        select_tx_unmitigated(ctx.networks[k], cfg.scheme, unmit_rng));

  std::vector<Node> sweep_winners = safe_winners;
  if (cfg.mitigation) {
    double threshold = deg_to_rad(cfg.theta_deg);
    Rng mit_rng = drop_rng(cfg, drop, kSelectMitigated);
    for (std::size_t k = 0; k < n; ++k) {
      EligibilitySets sets = mitigated_eligibility(
          ctx.networks[k], ctx.theta_w[k], threshold, cfg.scheme, mit_rng);
      int id = sets.selected_order.empty() ? sets.by_angle.front()
                                           : sets.selected_order.front();
      sweep_winners[k] = ctx.networks[k][id];
      metrics.mitigated_selections += 1;
      if (sets.selected_order.empty()) metrics.fallback_count += 1;
      if (sets.m > 0 && ctx.theta_w[k][id] <= threshold)
        metrics.violation_count += 1;
    }
  }

  double time_step = cfg.effective_time_step();
  RotationMax peak =
      cfg.mitigation
          ? max_over_rotation_scheduled(layout, sweep_winners, safe_winners,
                                        schedule, radar, models, time_step)
          : max_over_rotation(layout, safe_winners, radar, models, time_step);
  metrics.mmai_sample = peak.max_power;
  double noise_radar = db_to_linear(noise_power_dbm(models.noise, System::Radar));
  metrics.inr_db = linear_to_db(peak.max_power / noise_radar);

  // Victim-side sample at one uniform rotation instant (or averaged over the
  // whole rotation when configured).
  Rng instant_rng = drop_rng(cfg, drop, kInstant);
  double period = cfg.rotation_period();

  auto active_at = [&](double t) -> const std::vector<Node>& {
    return (cfg.mitigation && schedule.in_sweep(t)) ? sweep_winners
                                                    : safe_winners;
  };
  auto victims_of = [&](const std::vector<Node>& winners) {
    std::vector<Node> victims;
    victims.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      victims.push_back(
          victim_of(ctx.networks[k], winners[k], cfg.sta_tx_power_dbm));
    return victims;
  };

  double t_sample = instant_rng.uniform() * period;
  const std::vector<Node>& sampled_winners = active_at(t_sample);

  if (!cfg.rtw_full_rotation) {
    std::vector<Node> victims = victims_of(sampled_winners);
    double rtw = n > 0 ? rtw_interference(layout, victims, radar, t_sample, models)
                       : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      SinrNppi s = sinr_and_nppi(ctx.networks[k], sampled_winners[k], rtw,
                                 cfg.scheme, models);
      metrics.per_network.push_back(NetworkMetrics{
          s.sinr, s.nppi, sampled_winners[k].id, sampled_winners[k].priority});
    }
    return metrics;
  }

  // Full-rotation averaging: linear means of SINR and NPPI across the same
  // grid the peak scan uses, with the schedule switching the active winners.
  long steps = std::lround(period / time_step);
  std::vector<Node> safe_victims = victims_of(safe_winners);
  std::vector<Node> sweep_victims =
      cfg.mitigation ? victims_of(sweep_winners) : safe_victims;
  std::vector<double> sinr_acc(n, 0.0), nppi_acc(n, 0.0);
  for (long s = 0; s < steps; ++s) {
    double t = period * static_cast<double>(s) / static_cast<double>(steps);
    bool sweep = cfg.mitigation && schedule.in_sweep(t);
    const std::vector<Node>& winners = sweep ? sweep_winners : safe_winners;
    const std::vector<Node>& victims = sweep ? sweep_victims : safe_victims;
    double rtw = n > 0 ? rtw_interference(layout, victims, radar, t, models) : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      SinrNppi v = sinr_and_nppi(ctx.networks[k], winners[k], rtw, cfg.scheme,
                                 models);
      sinr_acc[k] += v.sinr;
      nppi_acc[k] += v.nppi;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    metrics.per_network.push_back(NetworkMetrics{
        sinr_acc[k] / static_cast<double>(steps),
        nppi_acc[k] / static_cast<double>(steps), sampled_winners[k].id,
        sampled_winners[k].priority});
  }
  return metrics;
}

[[maybe_unused]] int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

RunResult aggregate(const SimConfig& cfg, std::vector<DropMetrics>&& metrics,
                    double wall_time_s) {
  RunResult result;
  result.config = cfg;
  result.drop_count = static_cast<long>(metrics.size());
  result.wall_time_s = wall_time_s;

  result.mmai_samples.reserve(metrics.size());
  for (const DropMetrics& m : metrics) result.mmai_samples.push_back(m.mmai_sample);
  double mean_mw = pairwise_sum(result.mmai_samples) /
                   static_cast<double>(result.mmai_samples.size());
  result.mmai_mean_dbm = linear_to_db(mean_mw);
  result.inr_mean_db = result.mmai_mean_dbm - cfg.noise_radar_dbm;

  std::size_t samples = 0;
  for (const DropMetrics& m : metrics) samples += m.per_network.size();
  result.nppi_sorted.reserve(samples);
  for (const DropMetrics& m : metrics) {
    for (const NetworkMetrics& nm : m.per_network)
      result.nppi_sorted.push_back(nm.nppi);
    result.fallback_count += m.fallback_count;
    result.violation_count += m.violation_count;
    result.mitigated_selections += m.mitigated_selections;
  }
  std::sort(result.nppi_sorted.begin(), result.nppi_sorted.end());
  result.nppi_sorted_db.reserve(result.nppi_sorted.size());
  for (double v : result.nppi_sorted)
    result.nppi_sorted_db.push_back(linear_to_db(v));
  return result;
}

RunResult run_impl(const SimConfig& cfg, bool parallel) {
  validate_config(cfg);
  Models models = make_models(cfg);
  RadarState radar{{0.0, 0.0}, cfg.rho_rpm, 0.0};
  SweepSchedule schedule = build_sweep_schedule(
      region_spec(cfg), radar, deg_to_rad(cfg.effective_beam_margin_deg()));
  schedule.mitigation_lead = cfg.tau;

  long n = cfg.n_drops;
  std::vector<DropMetrics> metrics(static_cast<std::size_t>(n));
  std::string error;

  auto t0 = std::chrono::steady_clock::now();
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_threads(cfg.threads))
    for (long i = 0; i < n; ++i) {
      try {
        metrics[static_cast<std::size_t>(i)] =
            simulate_drop(cfg, models, schedule, radar, i);
      } catch (const std::exception& e) {
#pragma omp critical
        if (error.empty()) error = e.what();
      }
    }
#else
    parallel = false;
#endif
  }
  if (!parallel) {
    for (long i = 0; i < n; ++i)
      metrics[static_cast<std::size_t>(i)] =
          simulate_drop(cfg, models, schedule, radar, i);
  }
  if (!error.empty()) throw std::runtime_error("drop simulation failed: " + error);

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  return aggregate(cfg, std::move(metrics), wall);
}

}  // namespace

RunResult run(const SimConfig& config) { return run_impl(config, true); }

RunResult run_serial(const SimConfig& config) { return run_impl(config, false); }

std::vector<RunResult> sweep_parameter(const SimConfig& base, SweepAxis axis,
                                       std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("sweep_parameter: no axis values");
  std::vector<RunResult> results;
  results.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimConfig cfg = base;
    if (axis == SweepAxis::Distance)
      cfg.d = values[i];
    else
      cfg.theta_deg = values[i];
    cfg.seed = base.seed + i;
    results.push_back(run(cfg));
  }
  return results;
}

double empirical_cdf(std::span<const double> sorted_samples, double x) {
  if (sorted_samples.empty())
    throw std::invalid_argument("empirical_cdf: empty sample set");
  auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  return static_cast<double>(it - sorted_samples.begin()) /
         static_cast<double>(sorted_samples.size());
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace coex
