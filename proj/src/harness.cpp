#include "riskwarn/harness.hpp"

#include "riskwarn/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace riskwarn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMovingSpeed = 1e-3;  // [m/s] below this a vehicle is not heading anywhere

double directed_timegap(const Pose& from, double speed, const Pose& to, double corridor,
                        double gap) {
  if (speed < kMovingSpeed) return kInf;
  const Vec2 d = to.position - from.position;
  const double c = std::cos(from.heading);
  const double s = std::sin(from.heading);
  const double longitudinal = c * d.x() + s * d.y();
  const double lateral = -s * d.x() + c * d.y();
  if (longitudinal <= 0.0 || std::abs(lateral) >= corridor) return kInf;
  return gap / speed;
}

struct SimVehicle {
  std::string id;
  VehicleState state;
  MotionPlan plan;
};

class Simulation {
 public:
  Simulation(const ScenarioSpec& spec, ErrorVariant variant) : spec_(spec), variant_(variant) {
    for (const auto& v : spec.vehicles) {
      vehicles_.push_back({v.id, {spec.path(v.path), v.arc_position, v.speed, v.footprint_radius}, {}});
    }
    fired_.assign(spec.events.size(), false);
  }

  void fire_events(double t) {
    for (std::size_t i = 0; i < spec_.events.size(); ++i) {
      const ScriptedEvent& e = spec_.events[i];
      if (fired_[i] || e.trigger_time > t + 1e-9) continue;
      fired_[i] = true;
      if (!e.applies_to(variant_)) continue;
      SimVehicle& v = find(e.vehicle_id);
      if (const auto* sw = std::get_if<PathSwitch>(&e.action)) {
        const Vec2 where = world_position(v.state).position;
        v.state.path = spec_.path(sw->path);
        v.state.arc_position = v.state.path->project(where);
      } else {
        v.plan = std::get<MotionPlan>(e.action);
      }
    }
  }

  void step(double dt) {
    for (auto& v : vehicles_) {
      v.state = advance(v.state, v.plan, dt);
      v.plan = v.plan.remaining_after(dt);
    }
  }

  const SimVehicle& ego() const { return vehicles_.front(); }

  WorldSnapshot snapshot() const {
    WorldSnapshot w;
    w.ego = ego().state;
    w.ego_desired_speed = spec_.ego_desired_speed;
    w.ego_speed_limit = spec_.ego_speed_limit;
    for (std::size_t i = 1; i < vehicles_.size(); ++i) {
      w.others.push_back({vehicles_[i].id, vehicles_[i].state, {}, true});
    }
    return w;
  }

  double ego_timegap() const {
    const Pose ego_pose = world_position(ego().state);
    double best = kInf;
    for (std::size_t i = 1; i < vehicles_.size(); ++i) {
      const auto& o = vehicles_[i].state;
      best = std::min(best, pair_timegap(ego_pose, ego().state.footprint_radius, ego().state.speed,
                                         world_position(o), o.footprint_radius, o.speed));
    }
    return best;
  }

 private:
  SimVehicle& find(const std::string& id) {
    for (auto& v : vehicles_) {
      if (v.id == id) return v;
    }
    throw InvalidInput("scripted event for unknown vehicle '" + id + "'");
  }

  const ScenarioSpec& spec_;
  ErrorVariant variant_;
  std::vector<SimVehicle> vehicles_;  // ego first
  std::vector<bool> fired_;
};

}  // namespace

double pair_timegap(const Pose& a, double radius_a, double speed_a, const Pose& b, double radius_b,
                    double speed_b) {
  const double corridor = radius_a + radius_b;
  const double gap = std::max(0.0, (b.position - a.position).norm() - corridor);
  if (gap <= 0.0) return 0.0;
  return std::min(directed_timegap(a, speed_a, b, corridor, gap),
                  directed_timegap(b, speed_b, a, corridor, gap));
}

bool EpisodeResult::same_config(const EpisodeResult& other) const {
  return scenario == other.scenario && variation == other.variation && error == other.error &&
         driver == other.driver;
}

DriverErrorState error_state_for(const ScenarioSpec& spec, ErrorVariant variant,
                                 const ModelParameters& params) {
  DriverErrorState errors;
  errors.target_object = spec.target_object;
  errors.v_off = params.v_off;
  errors.a_intent = params.a_intent;
  errors.t_intent = params.t_intent;
  errors.predicted_path = spec.predicted_path();
  switch (variant) {
    case ErrorVariant::kNone:
      break;
    case ErrorVariant::kNotice:
      errors.ne = 1.0;
      break;
    case ErrorVariant::kForecast:
      errors.fe = 1.0;
      break;
    case ErrorVariant::kInference:
      errors.ie = 1.0;
      break;
  }
  return errors;
}

void for_each_step(const ScenarioSpec& spec, ErrorVariant variant, double dt,
                   const std::function<void(double, const WorldSnapshot&)>& visit) {
  spec.validate();
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  Simulation sim(spec, variant);
  const auto steps = static_cast<std::size_t>(std::llround(spec.duration / dt));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    sim.fire_events(t);
    visit(t, sim.snapshot());
    if (k < steps) sim.step(dt);
  }
}

EpisodeResult run_episode(const EpisodeConfig& config, const ModelParameters& params,
                          bool with_trace) {
  if (!config.scenario) throw InvalidInput("episode config has no scenario");
  const ScenarioSpec& spec = *config.scenario;
  spec.validate();
  params.validate();
  if (spec.vehicles.front().id != kEgoId) {
    throw InvalidInput("the ego must be the first vehicle of a scenario");
  }

  EpisodeResult result;
  result.scenario = spec.name;
  result.variation = spec.variation;
  result.error = config.error;
  result.driver = config.driver;
  result.model = config.model;
  result.min_timegap = kInf;

  const PlannerConfig planner = PlannerConfig::from(params);
  const DriverProfile profile = config.model == ModelKind::kBaseline
                                    ? baseline_profile(params)
                                    : profile_for(config.driver, params);
  const DriverErrorState errors = error_state_for(spec, config.error, params);

  Simulation sim(spec, config.error);
  const auto steps = static_cast<std::size_t>(std::llround(spec.duration / params.sim_dt));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * params.sim_dt;
    sim.fire_events(t);

    const WorldSnapshot world = sim.snapshot();
    double v_tar = world.ego.speed;
    Prediction ego_pred;
    if (config.model == ModelKind::kHumanBased) {
      v_tar = perceived_plan(world, errors, profile, planner).v_tar;
      ego_pred = predict_ego_toward(world.ego, v_tar, planner);
    } else {
      ego_pred = predict(world.ego, {}, planner.horizon, planner.prediction_dt);
    }
    const std::vector<Prediction> others = predict_objects(world, planner);
    const double risk = total_risk(ego_pred, others, planner.risk, profile.alpha);
    const double w = warning_signal(risk, profile);
    if (!result.warning_time && w >= params.warning_threshold) result.warning_time = t;

    const double gap = sim.ego_timegap();
    if (gap < result.min_timegap) {
      result.min_timegap = gap;
      result.min_timegap_time = t;
    }
    if (with_trace) result.trace.push_back({t, risk, w, v_tar, world.ego.speed, gap});

    if (k < steps) sim.step(params.sim_dt);
  }
  result.critical = result.min_timegap < params.critical_timegap;
  return result;
}

std::vector<EpisodeResult> run_sweep(std::span<const EpisodeConfig> configs,
                                     const ModelParameters& params, int jobs, bool with_trace) {
  std::vector<EpisodeResult> results(configs.size());
  const std::size_t workers =
      std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1, configs.size() ? configs.size() : 1);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size() && !failed; i = next++) {
      try {
        results[i] = run_episode(configs[i], params, with_trace);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

WarningOutcome evaluate_warning(const EpisodeResult& result, const ModelParameters& params) {
  WarningOutcome out;
  if (!result.critical) {
    out.false_positive = result.warning_time.has_value();
    return out;
  }
  const bool timely = result.warning_time && result.min_timegap_time &&
                      *result.warning_time <= *result.min_timegap_time - params.reaction_margin + 1e-9;
  out.false_negative = !timely;
  return out;
}

ComparisonRecord classify(const EpisodeResult& baseline, const EpisodeResult& human,
                          const ModelParameters& params) {
  if (!baseline.same_config(human) || baseline.model != ModelKind::kBaseline ||
      human.model != ModelKind::kHumanBased) {
    throw InvalidInput("classify needs a baseline and a human result of the same configuration");
  }
  if (baseline.critical != human.critical) {
    throw InvalidInput("ground truth differs between the two results of one configuration");
  }
  ComparisonRecord rec;
  rec.scenario = baseline.scenario;
  rec.variation = baseline.variation;
  rec.error = baseline.error;
  rec.driver = baseline.driver;
  if (baseline.warning_time && human.warning_time) {
    rec.dt_warn = *baseline.warning_time - *human.warning_time;
  }
  rec.baseline = evaluate_warning(baseline, params);
  rec.human = evaluate_warning(human, params);
  if (rec.baseline.false_positive && !rec.human.false_positive) {
    rec.error_code = kFalsePositiveReduction;
  } else if (rec.baseline.false_negative && !rec.human.false_negative) {
    rec.error_code = kFalseNegativeReduction;
  }
  return rec;
}

std::vector<ComparisonRecord> compare_all(std::span<const EpisodeResult> results,
                                          const ModelParameters& params) {
  using Key = std::tuple<ScenarioName, int, ErrorVariant, DriverType>;
  std::map<Key, std::pair<const EpisodeResult*, const EpisodeResult*>> pairs;
  std::vector<Key> order;
  for (const auto& r : results) {
    const Key key{r.scenario, r.variation, r.error, r.driver};
    auto [it, inserted] = pairs.try_emplace(key, nullptr, nullptr);
    if (inserted) order.push_back(key);
    auto& slot = r.model == ModelKind::kBaseline ? it->second.first : it->second.second;
    if (slot) throw InvalidInput("duplicate episode result for one configuration");
    slot = &r;
  }
  std::vector<ComparisonRecord> records;
  records.reserve(order.size());
  for (const auto& key : order) {
    const auto& [b, h] = pairs.at(key);
    if (!b || !h) throw InvalidInput("episode result without its baseline/human counterpart");
    records.push_back(classify(*b, *h, params));
  }
  return records;
}

std::vector<SummaryStatistics> summarize(std::span<const ComparisonRecord> records) {
  if (records.empty()) throw InvalidInput("cannot summarize an empty record set");
  std::vector<SummaryStatistics> out;
  for (DriverType type : kAllDriverTypes) {
    SummaryStatistics st;
    st.driver = type;
    std::vector<double> dts;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (const auto& r : records) {
      if (r.driver != type) continue;
      ++st.episodes;
      if (r.error_code == kFalsePositiveReduction) ++fp;
      if (r.error_code == kFalseNegativeReduction) ++fn;
      if (r.error != ErrorVariant::kNone && r.dt_warn) dts.push_back(*r.dt_warn);
    }
    if (st.episodes == 0) continue;
    st.fp_reduction = 100.0 * static_cast<double>(fp) / static_cast<double>(st.episodes);
    st.fn_reduction = 100.0 * static_cast<double>(fn) / static_cast<double>(st.episodes);
    st.timed_episodes = dts.size();
    if (!dts.empty()) {
      const double n = static_cast<double>(dts.size());
      double sum = 0.0;
      double sum_abs = 0.0;
      for (double d : dts) {
        sum += d;
        sum_abs += std::abs(d);
      }
      st.mean = sum / n;
      st.mean_abs = sum_abs / n;
      double sq = 0.0;
      for (double d : dts) sq += (d - st.mean) * (d - st.mean);
      st.variance = sq / n;
      st.min = *std::min_element(dts.begin(), dts.end());
      st.max = *std::max_element(dts.begin(), dts.end());
    }
    out.push_back(st);
  }
  return out;
}

}  // namespace riskwarn
