#include "riskwarn/perception.hpp"

#include "riskwarn/errors.hpp"
#include "riskwarn/personalization.hpp"

#include <algorithm>

namespace riskwarn {

namespace {

void check_level(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidInput(std::string(name) + " must be in [0, 1]");
  }
}

}  // namespace

void DriverErrorState::validate() const {
  check_level(ne, "notice error");
  check_level(fe, "forecast error");
  check_level(ie, "inference error");
}

Awareness apply_notice_error(double ne) {
  check_level(ne, "notice error");
  return ne < 0.5 ? Awareness::kAware : Awareness::kNotAware;
}

double apply_forecast_error(double v_obj, double fe, double v_off) {
  check_level(fe, "forecast error");
  return std::max(0.0, v_obj + fe * v_off);
}

PerceivedMotion apply_inference_error(double ie, const PathPtr& objective_path,
                                      const PathPtr& predicted_path, double a_intent,
                                      double t_intent) {
  check_level(ie, "inference error");
  if (ie < 0.5) return {objective_path, {}};
  if (predicted_path) return {predicted_path, {}};
  MotionPlan intent;
  intent.segments.push_back({a_intent, t_intent});
  return {objective_path, intent};
}

PerceivedWorld build_perceived_world(const WorldSnapshot& objective, const DriverErrorState& errors) {
  errors.validate();
  PerceivedWorld perceived = objective;
  auto it = std::find_if(perceived.others.begin(), perceived.others.end(),
                         [&](const WorldObject& o) { return o.id == errors.target_object; });
  if (it == perceived.others.end()) {
    if (errors.error_free()) return perceived;
    throw InvalidInput("driver error target '" + errors.target_object + "' is not in the world");
  }

  WorldObject& target = *it;
  target.aware = apply_notice_error(errors.ne) == Awareness::kAware;
  target.state.speed = apply_forecast_error(target.state.speed, errors.fe, errors.v_off);

  const PerceivedMotion motion = apply_inference_error(errors.ie, target.state.path,
                                                       errors.predicted_path, errors.a_intent,
                                                       errors.t_intent);
  if (motion.path != target.state.path) {
    const Vec2 where = world_position(target.state).position;
    target.state.path = motion.path;
    target.state.arc_position = motion.path->project(where);
  }
  target.assumed_plan = motion.plan;
  return perceived;
}

PlanResult perceived_plan(const WorldSnapshot& objective, const DriverErrorState& errors,
                          const DriverProfile& profile, const PlannerConfig& cfg) {
  return plan(build_perceived_world(objective, errors), profile.alpha, cfg);
}

}  // namespace riskwarn
