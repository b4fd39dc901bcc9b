// End-to-end acceptance checks for the coexistence simulator. Each criterion
// prints one PASS/FAIL line; the exit code is the number of failures.
//
// Usage: acceptance_tests [path-to-coexsim-binary]
// The binary path is only needed for the determinism check (criterion 7).

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coex/engine.hpp"
#include "coex/interference.hpp"
#include "coex/presets.hpp"
#include "coex/rng.hpp"
#include "coex/units.hpp"

using namespace coex;

namespace {

constexpr std::uint64_t kSeed = 42;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

double quantile_db(const std::vector<double>& sorted_db, double p) {
  std::size_t n = sorted_db.size();
  auto idx = static_cast<std::size_t>(
      std::llround(p * static_cast<double>(n - 1)));
  return sorted_db[idx];
}

double median_db(const RunResult& r) { return quantile_db(r.nppi_sorted_db, 0.5); }

SimConfig cdf_scenario(Scheme scheme, bool mitigation, double theta_deg,
                       long drops) {
  SimConfig cfg;
  cfg.d = 2000.0;
  cfg.scheme = scheme;
  cfg.mitigation = mitigation;
  cfg.theta_deg = theta_deg;
  cfg.n_drops = drops;
  cfg.seed = kSeed;
  return cfg;
}

std::string read_body_without_comments(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return "<missing " + path.string() + ">";
  std::ostringstream body;
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') body << line << "\n";
  return body.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path = argc > 1 ? argv[1] : "";
  int failed = 0;
  auto report = [&failed](int idx, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  };

  // 1. Formula exactness: the individual link budget and its factors.
  {
    SimConfig cfg;
    cfg.d = 5000.0;
    Models models = make_models(cfg);
    RadarState radar;
    Node tx{0, Role::Ap, {1000.0, 0.0}, 7, 30.0, {500.0, 0.0}};
    double link_dbm = linear_to_db(individual_interference(tx, radar, 0.0, models));
    double coastal_db = linear_to_db(coastal_path_gain(models.coastal, 1000.0));
    double peak_dbi = models.wifi.peak_gain_dbi();
    bool ok = std::fabs(link_dbm - (-23.3)) <= 0.05 &&
              std::fabs(coastal_db - (-94.97)) <= 0.05 &&
              std::fabs(peak_dbi - 8.17) <= 0.01;
    report(1, ok,
           fmt("link budget: %.3f dBm (want -23.3 +/- 0.05), path %.3f dB "
               "(want -94.97 +/- 0.05), array peak %.4f dBi (want 8.17 +/- 0.01)",
               link_dbm, coastal_db, peak_dbi));
  }

  // 2. Aggregate-interference oracle: empirical means over Poisson fields
  // match the analytic value within 3 standard errors, 1e5 realizations.
  {
    Rng rng(4242);
    long trials = 100000;
    CoastalPathModel path;
    Annulus disc{{0.0, 0.0}, 0.0, 1000.0};
    Annulus ring{{0.0, 0.0}, 100.0, 1000.0};
    auto unit = [](Point2D) { return 1.0; };
    auto attenuated = [&path](Point2D p) { return coastal_path_gain(path, norm(p)); };

    CampbellCheck checks[3] = {
        campbell_mean_oracle(100.0 / disc.area(), disc, unit, trials, rng),
        campbell_mean_oracle(100.0 / ring.area(), ring, attenuated, trials, rng),
        campbell_mean_oracle(200.0 / ring.area(), ring, attenuated, trials, rng),
    };
    double worst_z = 0.0;
    for (const CampbellCheck& c : checks) {
      double z = std::fabs(c.empirical_mean - c.analytic_mean) / c.std_error;
      if (z > worst_z) worst_z = z;
    }
    report(2, worst_z <= 3.0,
           fmt("mean aggregate vs analytic over %ld fields: worst deviation "
               "%.2f standard errors (limit 3)",
               trials, worst_z));
  }

  // 3. Distance sweep orderings, 2000 drops, d in {1, 2, 5, 10} km, the four
  // scheme/mitigation regimes paired by per-distance seeds.
  {
    std::vector<double> distances = {1000.0, 2000.0, 5000.0, 10000.0};
    auto inr_curve = [&](Scheme scheme, bool mitigation) {
      SimConfig base = cdf_scenario(scheme, mitigation, 30.0, 2000);
      std::vector<RunResult> runs =
          sweep_parameter(base, SweepAxis::Distance, distances);
      std::vector<double> inr;
      for (const RunResult& r : runs) inr.push_back(r.inr_mean_db);
      return inr;
    };
    std::vector<double> edca = inr_curve(Scheme::Edca, false);
    std::vector<double> csma = inr_curve(Scheme::Csma, false);
    std::vector<double> edca_mit = inr_curve(Scheme::Edca, true);
    std::vector<double> csma_mit = inr_curve(Scheme::Csma, true);

    bool falling = true, edca_over_csma = true, mitigation_helps = true,
         gap_shrinks = true;
    std::string bad_mitigation;
    for (std::size_t i = 0; i < distances.size(); ++i) {
      if (i + 1 < distances.size()) {
        falling = falling && edca[i] > edca[i + 1] && csma[i] > csma[i + 1] &&
                  edca_mit[i] > edca_mit[i + 1] && csma_mit[i] > csma_mit[i + 1];
      }
      edca_over_csma = edca_over_csma && edca[i] >= csma[i];
      if (edca_mit[i] >= edca[i]) {
        mitigation_helps = false;
        bad_mitigation += fmt(" %gkm", distances[i] / 1000.0);
      }
      gap_shrinks = gap_shrinks && std::fabs(edca_mit[i] - csma_mit[i]) <
                                       std::fabs(edca[i] - csma[i]);
    }
    bool ok = falling && edca_over_csma && mitigation_helps && gap_shrinks;
    report(3, ok,
           fmt("distance sweep: INR falls with d (%s), EDCA >= CSMA (%s), "
               "mitigation lowers EDCA INR (%s), EDCA-CSMA gap shrinks (%s); "
               "at 2 km: %.2f / %.2f / %.2f / %.2f dB",
               falling ? "yes" : "NO", edca_over_csma ? "yes" : "NO",
               mitigation_helps ? "yes" : ("NO at" + bad_mitigation).c_str(),
               gap_shrinks ? "yes" : "NO", edca[1], csma[1], edca_mit[1],
               csma_mit[1]));
  }

  // 4. Threshold concavity, 2000 drops, EDCA with mitigation, same seed for
  // all three thresholds so the comparison is paired.
  RunResult run_theta30 = run(cdf_scenario(Scheme::Edca, true, 30.0, 2000));
  {
    RunResult run_theta90 = run(cdf_scenario(Scheme::Edca, true, 90.0, 2000));
    RunResult run_theta180 = run(cdf_scenario(Scheme::Edca, true, 180.0, 2000));
    double inr30 = run_theta30.inr_mean_db;
    double inr90 = run_theta90.inr_mean_db;
    double inr180 = run_theta180.inr_mean_db;
    double med30 = median_db(run_theta30);
    double med90 = median_db(run_theta90);
    double med180 = median_db(run_theta180);
    bool ok = inr90 > inr30 && inr90 > inr180 && med90 > med30 && med90 > med180;
    report(4, ok,
           fmt("threshold concavity: INR 30/90/180 deg = %.2f / %.2f / %.2f dB "
               "(peak at 90: %s); median perf = %.2f / %.2f / %.2f dB "
               "(peak at 90: %s)",
               inr30, inr90, inr180,
               (inr90 > inr30 && inr90 > inr180) ? "yes" : "NO", med30, med90,
               med180, (med90 > med30 && med90 > med180) ? "yes" : "NO"));
  }

  // 5. The off-axis rule costs performance: the EDCA CDF shifts left by more
  // than 0 and at most 20 dB at every decile.
  {
    RunResult plain = run(cdf_scenario(Scheme::Edca, false, 30.0, 2000));
    double min_shift = 1e300, max_shift = -1e300;
    for (int decile = 1; decile <= 9; ++decile) {
      double p = decile / 10.0;
      double shift = quantile_db(plain.nppi_sorted_db, p) -
                     quantile_db(run_theta30.nppi_sorted_db, p);
      if (shift < min_shift) min_shift = shift;
      if (shift > max_shift) max_shift = shift;
    }
    bool ok = min_shift > 0.0 && max_shift <= 20.0;
    report(5, ok,
           fmt("mitigation cost: decile shifts of the EDCA performance CDF in "
               "[%.2f, %.2f] dB (need > 0 and <= 20)",
               min_shift, max_shift));
  }

  // 6. Safety of the selection rule at scale: no winner at or below the
  // threshold whenever an eligible node existed, across 10000 drops.
  {
    RunResult big = run(cdf_scenario(Scheme::Edca, true, 30.0, 10000));
    double fallback_rate = big.mitigated_selections > 0
                               ? static_cast<double>(big.fallback_count) /
                                     static_cast<double>(big.mitigated_selections)
                               : 0.0;
    bool ok = big.violation_count == 0;
    report(6, ok,
           fmt("selection safety over %ld drops: %ld violations (need 0); "
               "empty-set fallback in %.4f%% of %ld selections",
               big.drop_count, big.violation_count, 100.0 * fallback_rate,
               big.mitigated_selections));
  }

  // 7. Determinism across worker counts: the same preset run with 1 and 4
  // threads must produce byte-identical CSV bodies.
  {
    bool ok = false;
    std::string detail;
    if (cli_path.empty()) {
      detail = "no simulator binary passed as argv[1]";
    } else {
      namespace fs = std::filesystem;
      fs::path dir_a = fs::temp_directory_path() / "coex_accept_threads1";
      fs::path dir_b = fs::temp_directory_path() / "coex_accept_threads4";
      fs::remove_all(dir_a);
      fs::remove_all(dir_b);
      std::string common = "' preset fig3 --drops 120 --seed 7 --axis-values "
                           "1000,2000,5000,10000";
      std::string cmd_a = "'" + cli_path + common + " --threads 1 --out '" +
                          dir_a.string() + "' > /dev/null 2>&1";
      std::string cmd_b = "'" + cli_path + common + " --threads 4 --out '" +
                          dir_b.string() + "' > /dev/null 2>&1";
      int rc_a = std::system(cmd_a.c_str());
      int rc_b = std::system(cmd_b.c_str());
      std::string body_a = read_body_without_comments(dir_a / "fig3.csv");
      std::string body_b = read_body_without_comments(dir_b / "fig3.csv");
      ok = rc_a == 0 && rc_b == 0 && !body_a.empty() && body_a == body_b;
      detail = fmt("preset rerun with 1 vs 4 workers: exit %d/%d, bodies %zu "
                   "vs %zu bytes, identical: %s",
                   rc_a, rc_b, body_a.size(), body_b.size(),
                   body_a == body_b ? "yes" : "NO");
      fs::remove_all(dir_a);
      fs::remove_all(dir_b);
    }
    report(7, ok, "determinism: " + detail);
  }

  if (failed == 0)
    std::printf("all 7 acceptance criteria passed\n");
  else
    std::printf("%d of 7 acceptance criteria FAILED\n", failed);
  return failed == 0 ? 0 : 1;
}
