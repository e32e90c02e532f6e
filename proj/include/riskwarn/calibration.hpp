#pragma once

#include "riskwarn/harness.hpp"

#include <span>
#include <vector>

namespace riskwarn {

/// Logarithmic threshold grid, 20 points per decade over [lo, hi].
std::vector<double> threshold_grid(double lo = 1e-4, double hi = 10.0);

/// Re-evaluates the first warning time of a traced result for another threshold.
EpisodeResult with_threshold(const EpisodeResult& traced, double theta);

struct CalibrationResult {
  double theta = 0.0;
  bool feasible = false;
  std::size_t defensive_nominal_warnings = 0;  // defensive, no-error, human
  std::size_t confident_human_fp = 0;
  std::size_t confident_baseline_fp = 0;
};

/// Smallest grid threshold for which defensive drivers without errors never
/// get a warning and the human model raises strictly fewer false positives
/// than the baseline on confident drivers. `traced` must carry traces.
/// Falls back to the largest grid value (feasible = false) when none qualifies.
CalibrationResult calibrate_threshold(std::span<const EpisodeResult> traced,
                                      const ModelParameters& params,
                                      std::span<const double> grid);

/// Runs the traced sweep over `configs` and calibrates on the default grid.
CalibrationResult calibrate_threshold(std::span<const EpisodeConfig> configs,
                                      const ModelParameters& params, int jobs = 1);

}  // namespace riskwarn
