#pragma once

#include "riskwarn/perception.hpp"
#include "riskwarn/personalization.hpp"
#include "riskwarn/planner.hpp"
#include "riskwarn/scenarios.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace riskwarn {

struct TraceRow {
  double time = 0.0;
  double risk = 0.0;
  double warning = 0.0;    // W(t)
  double v_tar = 0.0;      // planned driver behavior (ego speed for the baseline)
  double ego_speed = 0.0;
  double timegap = 0.0;    // instantaneous ground-truth time gap
};

struct EpisodeResult {
  ScenarioName scenario = ScenarioName::kMotorcycleLaneChange;
  int variation = 1;
  ErrorVariant error = ErrorVariant::kNone;
  DriverType driver = DriverType::kNormal;
  ModelKind model = ModelKind::kBaseline;

  std::optional<double> warning_time;  // first t with W(t) >= theta
  bool critical = false;               // min time gap below the critical threshold
  double min_timegap = 0.0;            // +inf when no vehicle ever enters a travel corridor
  std::optional<double> min_timegap_time;
  std::vector<TraceRow> trace;

  bool same_config(const EpisodeResult& other) const;
};

/// Instantaneous time gap between two point masses: the free distance
/// (centre distance minus both footprint radii) divided by the speed of the
/// vehicle that is heading for the other one. A vehicle only counts as heading
/// for the other when the other lies ahead inside its travel corridor of half
/// width ra + rb. Overlapping footprints give 0, no conflict gives +inf.
double pair_timegap(const Pose& a, double radius_a, double speed_a, const Pose& b, double radius_b,
                    double speed_b);

/// Driver errors of an episode: the variant's error set to 1 on the scenario
/// target, with the perception parameters from `params`.
DriverErrorState error_state_for(const ScenarioSpec& spec, ErrorVariant variant,
                                 const ModelParameters& params);

/// Replays the scripted motion of `spec` under `variant` and hands the
/// objective world of every step to `visit`.
void for_each_step(const ScenarioSpec& spec, ErrorVariant variant, double dt,
                   const std::function<void(double, const WorldSnapshot&)>& visit);

/// Time-stepped simulation of one configuration. Other vehicles and the ego
/// follow the scenario script; the model under test only observes.
EpisodeResult run_episode(const EpisodeConfig& config, const ModelParameters& params,
                          bool with_trace = false);

/// Runs every configuration; results come back in input order regardless of `jobs`.
std::vector<EpisodeResult> run_sweep(std::span<const EpisodeConfig> configs,
                                     const ModelParameters& params, int jobs = 1,
                                     bool with_trace = false);

/// Error codes of the heatmaps.
enum ErrorReduction : int { kNoReduction = 0, kFalsePositiveReduction = 1, kFalseNegativeReduction = 2 };

struct WarningOutcome {
  bool false_positive = false;
  bool false_negative = false;
};

/// FP: warned in a non-critical episode. FN: critical episode without a warning
/// at least `reaction_margin` before the time-gap minimum.
WarningOutcome evaluate_warning(const EpisodeResult& result, const ModelParameters& params);

struct ComparisonRecord {
  ScenarioName scenario = ScenarioName::kMotorcycleLaneChange;
  int variation = 1;
  ErrorVariant error = ErrorVariant::kNone;
  DriverType driver = DriverType::kNormal;
  std::optional<double> dt_warn;  // t_warn(baseline) - t_warn(human) when both warned
  int error_code = kNoReduction;
  WarningOutcome baseline;
  WarningOutcome human;
};

/// Throws InvalidInput when the pair does not come from the same configuration.
ComparisonRecord classify(const EpisodeResult& baseline, const EpisodeResult& human,
                          const ModelParameters& params);

/// Pairs baseline and human results of the same configuration, in first-seen order.
std::vector<ComparisonRecord> compare_all(std::span<const EpisodeResult> results,
                                          const ModelParameters& params);

struct SummaryStatistics {
  DriverType driver = DriverType::kNormal;
  std::size_t episodes = 0;       // all records of this driver type
  std::size_t timed_episodes = 0; // error episodes where both models warned
  double mean = 0.0;              // signed mean warning-time improvement [s]
  double mean_abs = 0.0;          // mean |improvement| [s]
  double variance = 0.0;          // population variance [s^2]
  double min = 0.0;
  double max = 0.0;
  double fp_reduction = 0.0;      // percent of all episodes of the type
  double fn_reduction = 0.0;
};

/// One entry per driver type present, in defensive, normal, confident order.
/// Throws InvalidInput for an empty record set.
std::vector<SummaryStatistics> summarize(std::span<const ComparisonRecord> records);

}  // namespace riskwarn
