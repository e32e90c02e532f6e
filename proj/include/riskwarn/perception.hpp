#pragma once

#include "riskwarn/planner.hpp"
#include "riskwarn/world.hpp"

#include <string>

namespace riskwarn {

struct DriverProfile;

/// Driver errors regarding one target object, as delivered by a driver-state
/// estimator. Each error is a level in [0, 1].
struct DriverErrorState {
  double ne = 0.0;  // notice error
  double fe = 0.0;  // forecast error
  double ie = 0.0;  // inference error
  std::string target_object;
  double v_off = -4.0;     // [m/s]
  double a_intent = -1.5;  // [m/s^2]
  double t_intent = 3.0;   // [s]
  PathPtr predicted_path;  // optional wrongly inferred path

  bool error_free() const { return ne == 0.0 && fe == 0.0 && ie == 0.0; }
  void validate() const;
};

enum class Awareness { kAware, kNotAware };

/// NE in [0, 0.5) -> aware, [0.5, 1] -> not aware. Throws InvalidInput outside [0, 1].
Awareness apply_notice_error(double ne);

/// max(0, v_obj + fe * v_off).
double apply_forecast_error(double v_obj, double fe, double v_off);

struct PerceivedMotion {
  PathPtr path;
  MotionPlan plan;
};

/// IE below 0.5 keeps the objective path at constant velocity. From 0.5 on the
/// driver follows the wrong path if one is given, otherwise a wrong
/// acceleration intent (a_intent for t_intent seconds) on the objective path.
PerceivedMotion apply_inference_error(double ie, const PathPtr& objective_path,
                                      const PathPtr& predicted_path, double a_intent,
                                      double t_intent);

/// The world as the driver perceives it. Fields map as: aware = o_per,
/// state.speed = v_per, state.path = p_per, assumed_plan = perceived intent.
using PerceivedWorld = WorldSnapshot;

/// Applies the three error transforms to the target object only.
/// Throws InvalidInput if the target does not exist and the errors are not all zero.
PerceivedWorld build_perceived_world(const WorldSnapshot& objective, const DriverErrorState& errors);

/// Plans on the perceived world with the profile's risk factor.
PlanResult perceived_plan(const WorldSnapshot& objective, const DriverErrorState& errors,
                          const DriverProfile& profile, const PlannerConfig& cfg);

}  // namespace riskwarn
