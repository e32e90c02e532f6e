#include "riskwarn/calibration.hpp"

#include "riskwarn/errors.hpp"

#include <cmath>

namespace riskwarn {

std::vector<double> threshold_grid(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidParameter("threshold grid needs 0 < lo <= hi");
  std::vector<double> grid;
  const int first = static_cast<int>(std::floor(20.0 * std::log10(lo) + 1e-9));
  const int last = static_cast<int>(std::ceil(20.0 * std::log10(hi) - 1e-9));
  for (int k = first; k <= last; ++k) grid.push_back(std::pow(10.0, k / 20.0));
  return grid;
}

EpisodeResult with_threshold(const EpisodeResult& traced, double theta) {
  EpisodeResult out = traced;
  out.warning_time.reset();
  for (const auto& row : traced.trace) {
    if (row.warning >= theta) {
      out.warning_time = row.time;
      break;
    }
  }
  return out;
}

CalibrationResult calibrate_threshold(std::span<const EpisodeResult> traced,
                                      const ModelParameters& params,
                                      std::span<const double> grid) {
  if (grid.empty()) throw InvalidParameter("empty threshold grid");
  for (const auto& r : traced) {
    if (r.trace.empty()) throw InvalidInput("calibration needs traced episode results");
  }
  CalibrationResult last;
  for (double theta : grid) {
    CalibrationResult c;
    c.theta = theta;
    ModelParameters p = params;
    p.warning_threshold = theta;
    for (const auto& r : traced) {
      const EpisodeResult e = with_threshold(r, theta);
      if (e.model == ModelKind::kHumanBased && e.driver == DriverType::kDefensive &&
          e.error == ErrorVariant::kNone && e.warning_time) {
        ++c.defensive_nominal_warnings;
      }
      if (e.driver == DriverType::kConfident && evaluate_warning(e, p).false_positive) {
        ++(e.model == ModelKind::kHumanBased ? c.confident_human_fp : c.confident_baseline_fp);
      }
    }
    c.feasible = c.defensive_nominal_warnings == 0 && c.confident_human_fp < c.confident_baseline_fp;
    if (c.feasible) return c;
    last = c;
  }
  return last;
}

CalibrationResult calibrate_threshold(std::span<const EpisodeConfig> configs,
                                      const ModelParameters& params, int jobs) {
  const auto traced = run_sweep(configs, params, jobs, true);
  const auto grid = threshold_grid();
  return calibrate_threshold(traced, params, grid);
}

}  // namespace riskwarn
