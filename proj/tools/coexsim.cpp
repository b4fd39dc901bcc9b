// Command-line front end: single runs from a config file, the canned
// experiment presets, and the point-process sanity oracle.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coex/engine.hpp"
#include "coex/presets.hpp"

namespace {

struct RunOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;
};

struct PresetOptions {
  std::string name;
  long drops = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir = "out";
  std::string axis_values;
};

struct OracleOptions {
  long trials = 100000;
  std::uint64_t seed = 1;
};

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw coex::ConfigError("bad axis value '" + item + "'");
    }
  }
  if (values.empty()) throw coex::ConfigError("empty axis value list");
  return values;
}

void apply_overrides(coex::SimConfig& config,
                     const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw coex::ConfigError("--set expects key=value, got '" + kv + "'");
    coex::set_config_field(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
}

void print_summary(const coex::RunResult& r) {
  const std::vector<double>& db = r.nppi_sorted_db;
  auto quantile = [&db](double q) {
    std::size_t i = static_cast<std::size_t>(
        std::lround(q * static_cast<double>(db.size() - 1)));
    return db[i];
  };
  std::printf("drops            %ld\n", r.drop_count);
  std::printf("mmai             %.4f dBm\n", r.mmai_mean_dbm);
  std::printf("inr              %.4f dB\n", r.inr_mean_db);
  if (!db.empty()) {
    std::printf("nppi p10/50/90   %.4f / %.4f / %.4f dB\n", quantile(0.1),
                quantile(0.5), quantile(0.9));
  }
  if (r.mitigated_selections > 0) {
    std::printf("fallback rate    %.4f\n",
                static_cast<double>(r.fallback_count) /
                    static_cast<double>(r.mitigated_selections));
    std::printf("sweep violations %ld\n", r.violation_count);
  }
  std::printf("wall time        %.2f s\n", r.wall_time_s);
}

void write_run_outputs(const coex::RunResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  char hash[32];
  std::snprintf(hash, sizeof(hash), "0x%016llx",
                static_cast<unsigned long long>(coex::config_hash(r.config)));

  {
    std::ofstream out(out_dir + "/run_summary.csv");
    out << "# config_hash=" << hash << " seed=" << r.config.seed << "\n";
    out << "metric,value\n";
    out << "drops," << r.drop_count << "\n";
    out << "mmai_dbm," << coex::format_number(r.mmai_mean_dbm) << "\n";
    out << "inr_db," << coex::format_number(r.inr_mean_db) << "\n";
    out << "fallback_count," << r.fallback_count << "\n";
    out << "violation_count," << r.violation_count << "\n";
  }
  {
    std::ofstream out(out_dir + "/nppi_cdf.csv");
    out << "# config_hash=" << hash << " seed=" << r.config.seed << "\n";
    out << "nppi_db,cdf\n";
    if (!r.nppi_sorted_db.empty()) {
      double lo = std::floor(r.nppi_sorted_db.front() / 0.5) * 0.5 - 0.5;
      double hi = std::ceil(r.nppi_sorted_db.back() / 0.5) * 0.5 + 0.5;
      for (double x = lo; x <= hi + 1e-9; x += 0.5) {
        out << coex::format_number(x) << ","
            << coex::format_number(coex::empirical_cdf(r.nppi_sorted_db, x))
            << "\n";
      }
    }
  }
  {
    std::ofstream out(out_dir + "/run_manifest.txt");
    out << "config_hash " << hash << "\n\n" << coex::serialize_config(r.config);
  }
}

int do_run(const RunOptions& opt) {
  coex::SimConfig config = coex::parse_config_file(opt.config_path);
  apply_overrides(config, opt.overrides);
  if (opt.seed_set) config.seed = opt.seed;
  if (opt.threads >= 0) config.threads = opt.threads;
  coex::validate_config(config);
  coex::RunResult result = coex::run(config);
  print_summary(result);
  if (!opt.out_dir.empty()) write_run_outputs(result, opt.out_dir);
  return 0;
}

int do_preset(const PresetOptions& opt) {
  coex::PresetKind kind = coex::preset_kind_from_name(opt.name);
  coex::ExperimentPreset preset =
      coex::make_preset(kind, opt.drops, opt.seed, opt.threads);
  if (!opt.axis_values.empty())
    preset.axis_values = parse_value_list(opt.axis_values);
  std::vector<std::string> files = coex::run_preset(preset, opt.out_dir);
  for (const std::string& f : files) std::printf("wrote %s\n", f.c_str());
  return 0;
}

int do_oracle(const OracleOptions& opt) {
  // Disc, a power-law weight on an annulus, then doubled density: the
  // empirical mean over realizations must sit within 3 standard errors of
  // density times the integral.
  struct Case {
    const char* label;
    double density;
    coex::Annulus region;
    std::function<double(coex::Point2D)> h;
  };
  coex::CoastalPathModel path;
  double disc_density = 100.0 / (coex::kPi * 1e6);
  double ann_area = coex::kPi * (1000.0 * 1000.0 - 100.0 * 100.0);
  std::vector<Case> cases = {
      {"count on disc", disc_density, {{0.0, 0.0}, 0.0, 1000.0},
       [](coex::Point2D) { return 1.0; }},
      {"path gain on annulus", 100.0 / ann_area, {{0.0, 0.0}, 100.0, 1000.0},
       [path](coex::Point2D p) { return coex::coastal_path_gain(path, coex::norm(p)); }},
      {"doubled density", 200.0 / ann_area, {{0.0, 0.0}, 100.0, 1000.0},
       [path](coex::Point2D p) { return coex::coastal_path_gain(path, coex::norm(p)); }},
  };

  bool ok = true;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    coex::Rng rng(coex::derive_stream(opt.seed, i, 0xC0FFEE));
    coex::CampbellCheck check = coex::campbell_mean_oracle(
        cases[i].density, cases[i].region, cases[i].h, opt.trials, rng);
    double err = std::fabs(check.empirical_mean - check.analytic_mean);
    bool pass = err <= 3.0 * check.std_error;
    ok = ok && pass;
    std::printf("%-22s empirical %.6e  analytic %.6e  |diff| %.2e  3se %.2e  %s\n",
                cases[i].label, check.empirical_mean, check.analytic_mean, err,
                3.0 * check.std_error, pass ? "ok" : "FAIL");
  }
  if (!ok) throw std::runtime_error("campbell oracle check failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo coexistence simulator: rotating radar vs outdoor Wi-Fi"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "run one config file");
  run_cmd->add_option("--config", run_opt.config_path, "key=value config file")
      ->required();
  run_cmd->add_option("--set", run_opt.overrides,
                      "override a config key (key=value, repeatable)");
  run_cmd->add_option("--seed", run_opt.seed, "override the RNG seed")
      ->each([&run_opt](const std::string&) { run_opt.seed_set = true; });
  run_cmd->add_option("--out", run_opt.out_dir,
                      "directory for summary, CDF and manifest files");
  run_cmd->add_option("--threads", run_opt.threads, "worker threads (0 = auto)");

  PresetOptions preset_opt;
  CLI::App* preset_cmd =
      app.add_subcommand("preset", "regenerate a canned experiment");
  preset_cmd
      ->add_option("name", preset_opt.name, "fig3, fig4, fig5 or fig6")
      ->required();
  preset_cmd->add_option("--drops", preset_opt.drops, "drops per run");
  preset_cmd->add_option("--seed", preset_opt.seed, "base seed");
  preset_cmd->add_option("--threads", preset_opt.threads, "worker threads");
  preset_cmd->add_option("--out", preset_opt.out_dir, "output directory");
  preset_cmd->add_option("--axis-values", preset_opt.axis_values,
                         "override axis values (comma separated; meters for "
                         "fig3, degrees for fig5/fig6)");

  OracleOptions oracle_opt;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "independent model cross-checks");
  CLI::App* campbell_cmd = oracle_cmd->add_subcommand(
      "campbell", "mean aggregate over a Poisson field vs the analytic value");
  campbell_cmd->add_option("--trials", oracle_opt.trials, "realizations");
  campbell_cmd->add_option("--seed", oracle_opt.seed, "RNG seed");
  oracle_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
    if (*run_cmd) return do_run(run_opt);
    if (*preset_cmd) return do_preset(preset_opt);
    if (*oracle_cmd) return do_oracle(oracle_opt);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const coex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
