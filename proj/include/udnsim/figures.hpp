// Presets that regenerate the evaluation sweeps as plot-ready data files,
// one file per curve, simulation next to the closed-form prediction.
#pragma once

#include <string>
#include <vector>

#include "udnsim/results.hpp"

namespace udnsim {

struct FigureRequest {
  std::string id;             // 5a, 5b, 6, 7a, 7b, 8a, 8b, 9a, 9b
  std::string out_prefix;     // files become <prefix>_<id>_<curve>.<ext>
  OutputFormat format = OutputFormat::Csv;
  bool fast = false;          // 50 spatial realizations instead of 500
  int n_spatial = 0;          // explicit realization count; 0 = preset scale
  bool seed_set = false;
  std::uint64_t seed = 1;
  int n_threads = 0;
};

std::vector<std::string> known_figure_ids();

// Runs the preset sweeps and writes one data file per curve; returns the
// written paths. Throws on unknown figure ids.
std::vector<std::string> reproduce_figure(const FigureRequest& request);

}  // namespace udnsim
