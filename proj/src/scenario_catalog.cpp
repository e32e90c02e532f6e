// Geometry and scripts of the six interaction scenarios.
//
// Common layout: the ego drives in +x along y = 0, lanes are 3.5 m wide,
// oncoming traffic uses y = 3.5. Each scenario varies one urgency axis over
// its three variations (1 = least, 3 = most urgent). Ego events tagged with
// kAttentive only fire when the driver has no error: the attentive driver
// reacts to the conflict, a driver with an error carries on.

#include "riskwarn/errors.hpp"
#include "riskwarn/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace riskwarn {

namespace {

constexpr double kLaneWidth = 3.5;
constexpr double kCarRadius = 1.0;
constexpr double kMotorcycleRadius = 0.6;
constexpr double kBicycleRadius = 0.5;
constexpr double kPedestrianRadius = 0.4;

const std::vector<ErrorVariant> kAttentive = {ErrorVariant::kNone};
const std::vector<ErrorVariant> kLateReaction = {ErrorVariant::kForecast};

PathPtr make_path(std::vector<Vec2> pts) { return std::make_shared<const DrivingPath>(std::move(pts)); }

PathPtr straight(Vec2 from, Vec2 to) { return make_path({from, to}); }

/// Straight along x at y0 from x_from, a cosine-shaped shift by dy over
/// [x_shift, x_shift + shift_len], then straight to x_to.
std::vector<Vec2> shift_points(double x_from, double y0, double x_shift, double shift_len, double dy) {
  std::vector<Vec2> pts{{x_from, y0}};
  constexpr int kSteps = 20;
  for (int i = 0; i <= kSteps; ++i) {
    const double u = static_cast<double>(i) / kSteps;
    pts.emplace_back(x_shift + u * shift_len, y0 + dy * 0.5 * (1.0 - std::cos(std::numbers::pi * u)));
  }
  return pts;
}

PathPtr lane_shift(double x_from, double y0, double x_shift, double shift_len, double dy, double x_to) {
  auto pts = shift_points(x_from, y0, x_shift, shift_len, dy);
  pts.emplace_back(x_to, y0 + dy);
  return make_path(std::move(pts));
}

/// Shift out by dy, hold for hold_len, shift back.
PathPtr detour(double x_from, double y0, double x_shift, double shift_len, double dy,
               double hold_len, double x_to) {
  auto pts = shift_points(x_from, y0, x_shift, shift_len, dy);
  const double back = x_shift + shift_len + hold_len;
  constexpr int kSteps = 20;
  for (int i = 0; i <= kSteps; ++i) {
    const double u = static_cast<double>(i) / kSteps;
    pts.emplace_back(back + u * shift_len, y0 + dy * 0.5 * (1.0 + std::cos(std::numbers::pi * u)));
  }
  pts.emplace_back(x_to, y0);
  return make_path(std::move(pts));
}

/// Appends a circular arc (angles in radians, counter-clockwise positive).
void append_arc(std::vector<Vec2>& pts, Vec2 center, double radius, double from, double to) {
  constexpr int kSteps = 24;
  for (int i = 1; i <= kSteps; ++i) {
    const double a = from + (to - from) * static_cast<double>(i) / kSteps;
    pts.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
  }
}

MotionPlan plan_of(std::initializer_list<MotionSegment> segs) { return MotionPlan{segs}; }

ScriptedEvent ego_plan(double t, MotionPlan plan,
                       const std::vector<ErrorVariant>& variants = kAttentive) {
  return {t, std::string(kEgoId), std::move(plan), variants};
}

template <typename T>
T pick(int variation, T v1, T v2, T v3) {
  return variation == 1 ? v1 : (variation == 2 ? v2 : v3);
}

// Motorcycle behind a slow car wants to change into the left lane while a
// faster car approaches there from behind. Urgency: start distance of that car.
ScenarioSpec motorcycle_lane_change(int variation) {
  ScenarioSpec s;
  s.name = ScenarioName::kMotorcycleLaneChange;
  s.variation = variation;
  s.varied_axis = "starting distance of the car approaching in the neighboring lane";
  s.paths["ego_lane_change"] = lane_shift(0.0, 0.0, 40.0, 25.0, kLaneWidth, 300.0);
  s.paths["lane_right"] = straight({-100.0, 0.0}, {400.0, 0.0});
  s.paths["lane_left"] = straight({-100.0, kLaneWidth}, {400.0, kLaneWidth});
  s.paths["lane_left_exit"] = lane_shift(-100.0, kLaneWidth, 20.0, 25.0, kLaneWidth, 400.0);

  const double car_start = pick(variation, -30.0, -26.0, -22.0);
  s.vehicles = {
      {std::string(kEgoId), "ego_lane_change", 0.0, 10.0, kMotorcycleRadius},
      {"slow_car", "lane_right", 135.0, 6.0, kCarRadius},
      {"car", "lane_left", 100.0 + car_start, 13.0, kCarRadius},
  };
  // Attentive rider waits behind the slow car until the car has passed.
  s.events = {
      ego_plan(1.0, plan_of({{-2.5, 2.0}})),
      ego_plan(pick(variation, 6.0, 5.5, 5.0), plan_of({{2.0, 2.5}})),
  };
  s.target_object = "car";
  s.target_predicted_path = "lane_left_exit";
  s.ego_desired_speed = 10.0;
  s.ego_speed_limit = 10.0;
  s.duration = 12.0;
  return s;
}

// Overtaking a slow truck on a two-way road with oncoming traffic.
// Urgency: speed of the oncoming car.
ScenarioSpec car_overtaking(int variation) {
  ScenarioSpec s;
  s.name = ScenarioName::kCarOvertaking;
  s.variation = variation;
  s.varied_axis = "velocity of the oncoming car";
  s.paths["ego_overtake"] = detour(0.0, 0.0, 15.0, 20.0, kLaneWidth, 30.0, 300.0);
  s.paths["lane"] = straight({-100.0, 0.0}, {400.0, 0.0});
  s.paths["opposite_lane"] = straight({400.0, kLaneWidth}, {-200.0, kLaneWidth});

  s.vehicles = {
      {std::string(kEgoId), "ego_overtake", 0.0, 10.0, kCarRadius},
      {"truck", "lane", 125.0, 5.0, 1.5},
      {"oncoming", "opposite_lane", 270.0, pick(variation, 8.0, 10.0, 12.0), kCarRadius},
  };
  // Attentive driver abandons the overtake and follows the truck.
  s.events = {
      {1.0, std::string(kEgoId), PathSwitch{"lane"}, kAttentive},
      ego_plan(1.0, plan_of({{-2.5, 2.0}})),
  };
  s.target_object = "oncoming";
  s.ego_desired_speed = 10.0;
  s.ego_speed_limit = 10.0;
  s.duration = 12.0;
  return s;
}

// Ego on the minor road crosses a priority road; a car approaches from the left.
// Urgency: start distance of the priority car.
ScenarioSpec priority_intersection(int variation) {
  ScenarioSpec s;
  s.name = ScenarioName::kPriorityIntersection;
  s.variation = variation;
  s.varied_axis = "starting distance of the car on the priority road";
  const double lane_x = 60.0 + 0.5 * kLaneWidth;
  s.paths["ego_road"] = straight({0.0, 0.0}, {200.0, 0.0});
  s.paths["priority_road"] = straight({lane_x, 100.0}, {lane_x, -100.0});
  std::vector<Vec2> turn{{lane_x, 100.0}, {lane_x, 9.0}};
  append_arc(turn, {lane_x - 5.5, 9.0}, 5.5, 0.0, -0.5 * std::numbers::pi);
  turn.emplace_back(-100.0, kLaneWidth);
  s.paths["priority_turn_right"] = make_path(std::move(turn));

  const double start_y = pick(variation, 70.0, 64.0, 60.0);
  s.vehicles = {
      {std::string(kEgoId), "ego_road", 0.0, 10.0, kCarRadius},
      {"priority_car", "priority_road", 100.0 - start_y, 10.0, kCarRadius},
  };
  // Attentive driver stops at the stop line and moves off after the car passed.
  s.events = {
      ego_plan(3.0, plan_of({{-2.0, 5.0}})),
      ego_plan(9.0, plan_of({{2.0, 5.0}})),
  };
  s.target_object = "priority_car";
  s.target_predicted_path = "priority_turn_right";
  s.ego_desired_speed = 10.0;
  s.ego_speed_limit = 10.0;
  s.duration = 12.0;
  return s;
}

// Left turn through a curve across the lane of oncoming traffic.
// Urgency: start distance of the oncoming car.
ScenarioSpec curve_intersection(int variation) {
  ScenarioSpec s;
  s.name = ScenarioName::kCurveIntersection;
  s.variation = variation;
  s.varied_axis = "starting distance of the oncoming car";
  const double radius = 3.0 * kLaneWidth;
  std::vector<Vec2> left{{0.0, 0.0}, {60.0, 0.0}};
  append_arc(left, {60.0, radius}, radius, -0.5 * std::numbers::pi, 0.0);
  left.emplace_back(60.0 + radius, 150.0);
  s.paths["ego_left_turn"] = make_path(std::move(left));
  s.paths["opposite_lane"] = straight({300.0, kLaneWidth}, {-100.0, kLaneWidth});

  const double start_x = pick(variation, 150.0, 143.0, 138.0);
  s.vehicles = {
      {std::string(kEgoId), "ego_left_turn", 20.0, 7.0, kCarRadius},
      {"oncoming", "opposite_lane", 300.0 - start_x, 10.0, kCarRadius},
  };
  // Attentive driver yields: stops before the turn, then turns after the car passed.
  s.events = {
      ego_plan(2.0, plan_of({{-1.5, 14.0 / 3.0}})),
      ego_plan(8.5, plan_of({{2.0, 3.5}})),
  };
  s.target_object = "oncoming";
  s.ego_desired_speed = 7.0;
  s.ego_speed_limit = 7.0;
  s.duration = 12.0;
  return s;
}

// A bicycle in the bike lane swerves into the ego lane around an obstacle.
// Urgency: timing of the swerve.
ScenarioSpec bicycle_cutin(int variation) {
  ScenarioSpec s;
  s.name = ScenarioName::kBicycleCutin;
  s.variation = variation;
  s.varied_axis = "timing of the bicycle cut-in";
  const double bike_y = -2.5;
  const double trigger = pick(variation, 2.0, 2.6, 3.2);
  const double bike_start = 45.0;
  const double swerve_x = bike_start + 5.0 * trigger + 1.0;
  s.paths["ego_lane"] = straight({0.0, 0.0}, {300.0, 0.0});
  s.paths["bike_lane"] = straight({-50.0, bike_y}, {300.0, bike_y});
  s.paths["bike_swerve"] = detour(-50.0, bike_y, swerve_x, 8.0, 2.2, 25.0, 300.0);

  s.vehicles = {
      {std::string(kEgoId), "ego_lane", 0.0, 10.0, kCarRadius},
      {"bicycle", "bike_lane", 50.0 + bike_start, 5.0, kBicycleRadius},
  };
  // Attentive driver slows to the bicycle speed and follows it. Misjudging
  // the bicycle speed, the driver brakes hard about 12 m behind it.
  s.events = {
      {trigger, "bicycle", PathSwitch{"bike_swerve"}, {}},
      ego_plan(trigger + 0.3, plan_of({{-3.0, 5.0 / 3.0}})),
      ego_plan(6.3, plan_of({{-4.0, 1.25}}), kLateReaction),
  };
  s.target_object = "bicycle";
  s.target_predicted_path = "bike_lane";
  s.ego_desired_speed = 10.0;
  s.ego_speed_limit = 10.0;
  s.duration = 12.0;
  return s;
}

// A pedestrian waiting at the curb suddenly starts to cross.
// Urgency: timing of the start (later = ego closer).
ScenarioSpec pedestrian_cutin(int variation) {
  ScenarioSpec s;
  s.name = ScenarioName::kPedestrianCutin;
  s.variation = variation;
  s.varied_axis = "timing of the pedestrian cut-in";
  const double crossing_x = 80.0;
  const double trigger = pick(variation, 2.6, 3.0, 3.4);
  s.paths["ego_lane"] = straight({0.0, 0.0}, {300.0, 0.0});
  s.paths["crossing"] = straight({crossing_x, -4.0}, {crossing_x, 12.0});

  s.vehicles = {
      {std::string(kEgoId), "ego_lane", 0.0, 10.0, kCarRadius},
      {"pedestrian", "crossing", 0.0, 0.0, kPedestrianRadius},
  };
  // Attentive driver stops 10 m before the crossing and waits. Misjudging
  // the walking speed, the driver brakes hard and stops 6 m before it.
  const double react = trigger + 0.7;
  const double decel = 100.0 / (2.0 * (crossing_x - 10.0 - 10.0 * react));
  s.events = {
      {trigger, "pedestrian", plan_of({{1.6, 0.5}}), {}},
      ego_plan(react, plan_of({{-decel, 10.0 / decel}})),
      ego_plan(6.57, plan_of({{-6.0, 10.0 / 6.0}}), kLateReaction),
  };
  s.target_object = "pedestrian";
  s.ego_desired_speed = 10.0;
  s.ego_speed_limit = 10.0;
  s.duration = 12.0;
  return s;
}

}  // namespace

ScenarioSpec build_scenario(ScenarioName name, int variation) {
  if (variation < 1 || variation > 3) {
    throw InvalidInput("scenario variation must be 1, 2 or 3");
  }
  ScenarioSpec spec;
  switch (name) {
    case ScenarioName::kMotorcycleLaneChange:
      spec = motorcycle_lane_change(variation);
      break;
    case ScenarioName::kCarOvertaking:
      spec = car_overtaking(variation);
      break;
    case ScenarioName::kPriorityIntersection:
      spec = priority_intersection(variation);
      break;
    case ScenarioName::kCurveIntersection:
      spec = curve_intersection(variation);
      break;
    case ScenarioName::kBicycleCutin:
      spec = bicycle_cutin(variation);
      break;
    case ScenarioName::kPedestrianCutin:
      spec = pedestrian_cutin(variation);
      break;
    default:
      throw InvalidInput("unknown scenario");
  }
  spec.validate();
  return spec;
}

}  // namespace riskwarn
