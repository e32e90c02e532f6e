#include "riskwarn/planner.hpp"

#include "riskwarn/errors.hpp"
#include "riskwarn/personalization.hpp"

#include <algorithm>
#include <cmath>

namespace riskwarn {

VelocitySampleSet sample_velocities(double current, double v_max, int n) {
  if (!(v_max > 0.0) || n < 2) {
    throw InvalidParameter("velocity sampling needs v_max > 0 and n >= 2");
  }
  VelocitySampleSet set;
  set.values.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    set.values.push_back(v_max * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  set.values.back() = v_max;
  const bool on_grid = std::any_of(set.values.begin(), set.values.end(),
                                   [&](double v) { return std::abs(v - current) <= 1e-9; });
  if (!on_grid && current >= 0.0) {
    set.values.insert(std::upper_bound(set.values.begin(), set.values.end(), current), current);
  }
  return set;
}

double utility(double v, double v_desired, double k_u) {
  return k_u * std::min(v, v_desired) / v_desired;
}

double comfort_penalty(double v, double current, double k_o, double v_ref) {
  return k_o * std::abs(v - current) / v_ref;
}

PlanResult select_target(double current, double v_desired, const VelocitySampleSet& samples,
                         const RiskEvaluator& risk, const CostGains& gains) {
  if (samples.values.empty()) {
    throw InvalidInput("planner received an empty velocity sample set");
  }
  PlanResult result;
  result.costs.reserve(samples.values.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < samples.values.size(); ++i) {
    CostBreakdown c;
    c.v = samples.values[i];
    c.risk = gains.k_r * risk(c.v);
    c.utility = utility(c.v, v_desired, gains.k_u);
    c.comfort = comfort_penalty(c.v, current, gains.k_o, gains.v_ref);
    c.total = c.risk - c.utility + c.comfort;
    result.costs.push_back(c);

    const CostBreakdown& b = result.costs[best];
    if (i == 0) continue;
    const double dc = std::abs(c.v - current);
    const double db = std::abs(b.v - current);
    if (c.total < b.total || (c.total == b.total && (dc < db || (dc == db && c.v > b.v)))) {
      best = i;
    }
  }
  result.v_tar = result.costs[best].v;
  return result;
}

PlannerConfig PlannerConfig::from(const ModelParameters& params) {
  PlannerConfig cfg;
  cfg.gains = {params.k_r, params.k_u, params.k_o, params.v_ref};
  cfg.risk = params.risk_model();
  cfg.horizon = params.s_max;
  cfg.prediction_dt = params.prediction_dt;
  cfg.a_ramp = params.a_ramp;
  cfg.velocity_samples = params.velocity_samples;
  return cfg;
}

Prediction predict_ego_toward(const VehicleState& ego, double v, const PlannerConfig& cfg) {
  return predict(ego, ramp_to(ego.speed, v, cfg.a_ramp), cfg.horizon, cfg.prediction_dt);
}

std::vector<Prediction> predict_objects(const WorldSnapshot& world, const PlannerConfig& cfg) {
  std::vector<Prediction> out;
  out.reserve(world.others.size());
  for (const auto& obj : world.others) {
    if (!obj.aware) continue;
    out.push_back(predict(obj.state, obj.assumed_plan, cfg.horizon, cfg.prediction_dt));
  }
  return out;
}

PlanResult plan(const WorldSnapshot& world, const VelocitySampleSet& samples, double alpha,
                const PlannerConfig& cfg) {
  const std::vector<Prediction> others = predict_objects(world, cfg);
  const RiskEvaluator risk = [&](double v) {
    if (others.empty()) return 0.0;
    return total_risk(predict_ego_toward(world.ego, v, cfg), others, cfg.risk, alpha);
  };
  return select_target(world.ego.speed, world.ego_desired_speed, samples, risk, cfg.gains);
}

PlanResult plan(const WorldSnapshot& world, double alpha, const PlannerConfig& cfg) {
  return plan(world, sample_velocities(world.ego.speed, world.ego_speed_limit, cfg.velocity_samples),
              alpha, cfg);
}

}  // namespace riskwarn
