#include "coex/presets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "coex/engine.hpp"

namespace coex {

namespace {

constexpr double kInrThresholdDb = -10.0;
constexpr double kCdfGridStepDb = 0.5;

struct Regime {
  Scheme scheme;
  bool mitigation;
  const char* label;
};

constexpr Regime kRegimes[] = {
    {Scheme::Edca, false, "edca"},
    {Scheme::Csma, false, "csma"},
    {Scheme::Edca, true, "edca_mit"},
    {Scheme::Csma, true, "csma_mit"},
};

SimConfig preset_base(long drops, std::uint64_t seed, int threads) {
  SimConfig base;
  base.d = 2000.0;  // CDF presets; fig3 sweeps its own distances
  base.n_drops = drops > 0 ? drops : 10000;
  base.seed = seed != 0 ? seed : 1;
  base.threads = threads;
  return base;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_header(std::ofstream& out, const ExperimentPreset& preset) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "0x%016llx",
                static_cast<unsigned long long>(config_hash(preset.base)));
  out << "# preset=" << preset.name << "\n";
  out << "# config_hash=" << hash << " seed=" << preset.base.seed
      << " n_drops=" << preset.base.n_drops << "\n";
}

void write_manifest(const ExperimentPreset& preset, const std::string& path) {
  std::ofstream out = open_out(path);
  char hash[32];
  std::snprintf(hash, sizeof(hash), "0x%016llx",
                static_cast<unsigned long long>(config_hash(preset.base)));
  out << "preset " << preset.name << "\n";
  out << "config_hash " << hash << "\n";
  if (preset.axis_values.empty()) {
    out << "axis: none (single scenario, base seed)\n";
  } else {
    out << "axis";
    for (double v : preset.axis_values) out << " " << format_number(v);
    out << (preset.kind == PresetKind::Fig3 ? " (meters)\n" : " (degrees)\n");
    out << "per-run seed: base seed + axis index\n";
  }
  if (preset.kind == PresetKind::Fig3 || preset.kind == PresetKind::Fig4) {
    out << "regimes:";
    for (const Regime& r : kRegimes) out << " " << r.label;
    out << "\n";
  } else {
    out << "regimes: edca_mit\n";
  }
  out << "\nbase config:\n" << serialize_config(preset.base);
}

std::vector<double> cdf_grid(const std::vector<const std::vector<double>*>& sets) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const std::vector<double>* s : sets) {
    if (s->empty()) continue;
    if (first || s->front() < lo) lo = s->front();
    if (first || s->back() > hi) hi = s->back();
    first = false;
  }
  if (first) throw std::runtime_error("cdf_grid: no samples");
  lo = std::floor(lo / kCdfGridStepDb) * kCdfGridStepDb - kCdfGridStepDb;
  hi = std::ceil(hi / kCdfGridStepDb) * kCdfGridStepDb + kCdfGridStepDb;
  std::vector<double> grid;
  long steps = std::lround((hi - lo) / kCdfGridStepDb);
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) grid.push_back(lo + kCdfGridStepDb * i);
  return grid;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return std::string(buf);
}

PresetKind preset_kind_from_name(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (n == "fig3") return PresetKind::Fig3;
  if (n == "fig4") return PresetKind::Fig4;
  if (n == "fig5") return PresetKind::Fig5;
  if (n == "fig6") return PresetKind::Fig6;
  throw ConfigError("unknown preset '" + name +
                    "' (expected fig3, fig4, fig5 or fig6)");
}

ExperimentPreset make_preset(PresetKind kind, long drops, std::uint64_t seed,
                             int threads) {
  ExperimentPreset preset;
  preset.kind = kind;
  preset.base = preset_base(drops, seed, threads);
  switch (kind) {
    case PresetKind::Fig3:
      preset.name = "fig3";
      for (int km = 1; km <= 10; ++km)
        preset.axis_values.push_back(1000.0 * km);
      break;
    case PresetKind::Fig4:
      preset.name = "fig4";
      break;
    case PresetKind::Fig5:
      preset.name = "fig5";
      preset.base.scheme = Scheme::Edca;
      preset.base.mitigation = true;
      preset.axis_values = {0.0, 30.0, 60.0, 90.0, 120.0, 150.0, 180.0};
      break;
    case PresetKind::Fig6:
      preset.name = "fig6";
      preset.base.scheme = Scheme::Edca;
      preset.base.mitigation = true;
      preset.axis_values = {30.0, 90.0, 180.0};
      break;
  }
  return preset;
}

std::vector<std::string> run_preset(const ExperimentPreset& preset,
                                    const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::string csv_path = out_dir + "/" + preset.name + ".csv";
  std::string manifest_path = out_dir + "/" + preset.name + "_manifest.txt";
  std::ofstream out = open_out(csv_path);
  write_header(out, preset);

  switch (preset.kind) {
    case PresetKind::Fig3: {
      // INR vs distance, all four scheme/mitigation combinations side by
      // side. Same per-index seeds across regimes, so curves are paired.
      std::vector<std::vector<RunResult>> by_regime;
      for (const Regime& regime : kRegimes) {
        SimConfig cfg = preset.base;
        cfg.scheme = regime.scheme;
        cfg.mitigation = regime.mitigation;
        by_regime.push_back(
            sweep_parameter(cfg, SweepAxis::Distance, preset.axis_values));
      }
      out << "d_km,inr_edca_db,inr_csma_db,inr_edca_mit_db,inr_csma_mit_db,"
             "inr_threshold_db\n";
      for (std::size_t i = 0; i < preset.axis_values.size(); ++i) {
        out << format_number(preset.axis_values[i] / 1000.0);
        for (const std::vector<RunResult>& runs : by_regime)
          out << "," << format_number(runs[i].inr_mean_db);
        out << "," << format_number(kInrThresholdDb) << "\n";
      }
      break;
    }
    case PresetKind::Fig4: {
      // Performance CDFs for the four combinations at one distance, one run
      // each with the shared base seed.
      std::vector<RunResult> runs;
      for (const Regime& regime : kRegimes) {
        SimConfig cfg = preset.base;
        cfg.scheme = regime.scheme;
        cfg.mitigation = regime.mitigation;
        runs.push_back(run(cfg));
      }
      std::vector<const std::vector<double>*> sets;
      for (const RunResult& r : runs) sets.push_back(&r.nppi_sorted_db);
      std::vector<double> grid = cdf_grid(sets);
      out << "nppi_db,cdf_edca,cdf_csma,cdf_edca_mit,cdf_csma_mit\n";
      for (double x : grid) {
        out << format_number(x);
        for (const RunResult& r : runs)
          out << "," << format_number(empirical_cdf(r.nppi_sorted_db, x));
        out << "\n";
      }
      break;
    }
    case PresetKind::Fig5: {
      std::vector<RunResult> runs =
          sweep_parameter(preset.base, SweepAxis::Threshold, preset.axis_values);
      out << "theta_deg,inr_db,inr_threshold_db\n";
      for (std::size_t i = 0; i < preset.axis_values.size(); ++i) {
        out << format_number(preset.axis_values[i]) << ","
            << format_number(runs[i].inr_mean_db) << ","
            << format_number(kInrThresholdDb) << "\n";
      }
      break;
    }
    case PresetKind::Fig6: {
      std::vector<RunResult> runs =
          sweep_parameter(preset.base, SweepAxis::Threshold, preset.axis_values);
      std::vector<const std::vector<double>*> sets;
      for (const RunResult& r : runs) sets.push_back(&r.nppi_sorted_db);
      std::vector<double> grid = cdf_grid(sets);
      out << "nppi_db";
      for (double theta : preset.axis_values) {
        char col[32];
        std::snprintf(col, sizeof(col), ",cdf_theta%03d",
                      static_cast<int>(std::lround(theta)));
        out << col;
      }
      out << "\n";
      for (double x : grid) {
        out << format_number(x);
        for (const RunResult& r : runs)
          out << "," << format_number(empirical_cdf(r.nppi_sorted_db, x));
        out << "\n";
      }
      break;
    }
  }
  out.close();
  write_manifest(preset, manifest_path);
  return {csv_path, manifest_path};
}

}  // namespace coex
