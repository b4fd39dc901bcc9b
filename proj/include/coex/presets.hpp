#pragma once

#include <string>
#include <vector>

#include "coex/config.hpp"

namespace coex {

// Canned experiments: INR vs distance for the four scheme/mitigation
// combinations (fig3), performance CDFs with and without the off-axis rule
// (fig4), INR vs eligibility threshold (fig5) and performance CDFs across
// thresholds (fig6).
enum class PresetKind { Fig3, Fig4, Fig5, Fig6 };

struct ExperimentPreset {
  PresetKind kind = PresetKind::Fig3;
  std::string name;
  SimConfig base;
  // fig3: distances in meters; fig5/fig6: thresholds in degrees.
  std::vector<double> axis_values;
};

PresetKind preset_kind_from_name(const std::string& name);

// drops <= 0 and seed == 0 keep the preset defaults (10000 drops, seed 1).
ExperimentPreset make_preset(PresetKind kind, long drops = 0,
                             std::uint64_t seed = 0, int threads = 0);

// Runs the preset and writes its CSV plus a run manifest into out_dir
// (created if missing). Returns the paths written. Every CSV starts with a
// '#' comment header carrying the config hash and seed.
std::vector<std::string> run_preset(const ExperimentPreset& preset,
                                    const std::string& out_dir);

// 6 significant digits, C locale.
std::string format_number(double value);

}  // namespace coex
