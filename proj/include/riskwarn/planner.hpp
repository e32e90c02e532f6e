#pragma once

#include "riskwarn/risk.hpp"
#include "riskwarn/world.hpp"

#include <functional>
#include <string>
#include <vector>

namespace riskwarn {

struct ModelParameters;

/// Candidate target velocities, ascending.
struct VelocitySampleSet {
  std::vector<double> values;
};

/// `n` evenly spaced velocities over [0, v_max], plus `current` when it is
/// not already on the grid (within 1e-9).
VelocitySampleSet sample_velocities(double current, double v_max, int n);

struct CostGains {
  double k_r = 30.0;
  double k_u = 0.15;
  double k_o = 0.05;
  double v_ref = 10.0;  // [m/s]
};

/// Time-to-goal utility, normalized: k_u * min(v, v_desired) / v_desired.
double utility(double v, double v_desired, double k_u);

/// Velocity-change penalty: k_o * |v - current| / v_ref.
double comfort_penalty(double v, double current, double k_o, double v_ref);

struct CostBreakdown {
  double v = 0.0;
  double risk = 0.0;  // already weighted by k_r
  double utility = 0.0;
  double comfort = 0.0;
  double total = 0.0;  // risk - utility + comfort
};

struct PlanResult {
  double v_tar = 0.0;
  std::vector<CostBreakdown> costs;  // one entry per sample, sample order
};

using RiskEvaluator = std::function<double(double candidate)>;

/// Scores every candidate with C = k_r R - U + O and returns the argmin. Ties
/// go to the candidate closest to `current`, then to the higher velocity.
/// Throws InvalidInput for an empty sample set.
PlanResult select_target(double current, double v_desired, const VelocitySampleSet& samples,
                         const RiskEvaluator& risk, const CostGains& gains);

/// Another traffic participant as seen by a planner: current state plus the
/// motion assumed for prediction (empty plan = constant velocity).
struct WorldObject {
  std::string id;
  VehicleState state;
  MotionPlan assumed_plan;
  bool aware = true;  // unaware objects are left out of the risk evaluation

  bool operator==(const WorldObject&) const = default;
};

struct WorldSnapshot {
  VehicleState ego;
  double ego_desired_speed = 10.0;  // [m/s]
  double ego_speed_limit = 12.0;    // [m/s]
  std::vector<WorldObject> others;

  bool operator==(const WorldSnapshot&) const = default;
};

struct PlannerConfig {
  CostGains gains;
  RiskModelConfig risk;
  double horizon = 8.0;          // [s]
  double prediction_dt = 0.2;    // [s]
  double a_ramp = 2.0;           // [m/s^2]
  int velocity_samples = 21;

  static PlannerConfig from(const ModelParameters& params);
};

/// Ego prediction for candidate `v`: ramp at a_ramp to v, then hold.
Prediction predict_ego_toward(const VehicleState& ego, double v, const PlannerConfig& cfg);

/// Predictions of every aware object under its assumed plan.
std::vector<Prediction> predict_objects(const WorldSnapshot& world, const PlannerConfig& cfg);

/// Behavior planning on `world` with risk factor `alpha`.
PlanResult plan(const WorldSnapshot& world, const VelocitySampleSet& samples, double alpha,
                const PlannerConfig& cfg);

/// Convenience overload sampling [0, ego_speed_limit].
PlanResult plan(const WorldSnapshot& world, double alpha, const PlannerConfig& cfg);

}  // namespace riskwarn
