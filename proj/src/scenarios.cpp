#include "riskwarn/scenarios.hpp"

#include "riskwarn/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace riskwarn {

namespace {

using nlohmann::ordered_json;

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const Enum (&all)[N], const char* what) {
  for (Enum e : all) {
    if (to_string(e) == name) return e;
  }
  throw InvalidInput(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

constexpr ModelKind kAllModels[] = {ModelKind::kBaseline, ModelKind::kHumanBased};

ordered_json path_to_json(const DrivingPath& path) {
  ordered_json pts = ordered_json::array();
  for (const Vec2& p : path.points()) pts.push_back({p.x(), p.y()});
  return pts;
}

PathPtr path_from_json(const nlohmann::json& j) {
  std::vector<Vec2> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw InvalidInput("path points must be [x, y] pairs");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return std::make_shared<const DrivingPath>(std::move(pts));
}

ordered_json plan_to_json(const MotionPlan& plan) {
  ordered_json segs = ordered_json::array();
  for (const auto& s : plan.segments) {
    segs.push_back({{"acceleration", s.acceleration}, {"duration", s.duration}});
  }
  return segs;
}

MotionPlan plan_from_json(const nlohmann::json& j) {
  MotionPlan plan;
  for (const auto& s : j) {
    plan.segments.push_back({s.at("acceleration").get<double>(), s.at("duration").get<double>()});
  }
  return plan;
}

ordered_json spec_to_json(const ScenarioSpec& spec) {
  ordered_json j;
  j["name"] = std::string(to_string(spec.name));
  j["variation"] = spec.variation;
  j["varied_axis"] = spec.varied_axis;
  ordered_json paths = ordered_json::object();
  for (const auto& [name, path] : spec.paths) paths[name] = path_to_json(*path);
  j["paths"] = paths;
  ordered_json vehicles = ordered_json::array();
  for (const auto& v : spec.vehicles) {
    vehicles.push_back({{"id", v.id},
                        {"path", v.path},
                        {"arc_position", v.arc_position},
                        {"speed", v.speed},
                        {"footprint_radius", v.footprint_radius}});
  }
  j["vehicles"] = vehicles;
  ordered_json events = ordered_json::array();
  for (const auto& e : spec.events) {
    ordered_json ej;
    ej["trigger_time"] = e.trigger_time;
    ej["vehicle_id"] = e.vehicle_id;
    if (const auto* sw = std::get_if<PathSwitch>(&e.action)) {
      ej["path_switch"] = sw->path;
    } else {
      ej["motion_plan"] = plan_to_json(std::get<MotionPlan>(e.action));
    }
    if (!e.error_variants.empty()) {
      ordered_json variants = ordered_json::array();
      for (ErrorVariant v : e.error_variants) variants.push_back(std::string(to_string(v)));
      ej["error_variants"] = variants;
    }
    events.push_back(ej);
  }
  j["events"] = events;
  j["target_object"] = spec.target_object;
  j["target_predicted_path"] = spec.target_predicted_path;
  j["ego_desired_speed"] = spec.ego_desired_speed;
  j["ego_speed_limit"] = spec.ego_speed_limit;
  j["duration"] = spec.duration;
  return j;
}

ScenarioSpec spec_from_json(const nlohmann::json& j) {
  ScenarioSpec spec;
  spec.name = parse_scenario_name(j.at("name").get<std::string>());
  spec.variation = j.at("variation").get<int>();
  spec.varied_axis = j.value("varied_axis", std::string{});
  for (const auto& [name, pts] : j.at("paths").items()) spec.paths[name] = path_from_json(pts);
  for (const auto& v : j.at("vehicles")) {
    spec.vehicles.push_back({v.at("id").get<std::string>(), v.at("path").get<std::string>(),
                             v.at("arc_position").get<double>(), v.at("speed").get<double>(),
                             v.value("footprint_radius", 1.0)});
  }
  for (const auto& e : j.value("events", nlohmann::json::array())) {
    ScriptedEvent ev;
    ev.trigger_time = e.at("trigger_time").get<double>();
    ev.vehicle_id = e.at("vehicle_id").get<std::string>();
    const bool has_switch = e.contains("path_switch");
    if (has_switch == e.contains("motion_plan")) {
      throw InvalidInput("event needs exactly one of path_switch / motion_plan");
    }
    if (has_switch) {
      ev.action = PathSwitch{e.at("path_switch").get<std::string>()};
    } else {
      ev.action = plan_from_json(e.at("motion_plan"));
    }
    for (const auto& v : e.value("error_variants", nlohmann::json::array())) {
      ev.error_variants.push_back(parse_error_variant(v.get<std::string>()));
    }
    spec.events.push_back(std::move(ev));
  }
  spec.target_object = j.at("target_object").get<std::string>();
  spec.target_predicted_path = j.value("target_predicted_path", std::string{});
  spec.ego_desired_speed = j.at("ego_desired_speed").get<double>();
  spec.ego_speed_limit = j.at("ego_speed_limit").get<double>();
  spec.duration = j.at("duration").get<double>();
  spec.validate();
  return spec;
}

}  // namespace

std::string_view to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::kMotorcycleLaneChange:
      return "motorcycle_lane_change";
    case ScenarioName::kCarOvertaking:
      return "car_overtaking";
    case ScenarioName::kPriorityIntersection:
      return "priority_intersection";
    case ScenarioName::kCurveIntersection:
      return "curve_intersection";
    case ScenarioName::kBicycleCutin:
      return "bicycle_cutin";
    case ScenarioName::kPedestrianCutin:
      return "pedestrian_cutin";
  }
  return "unknown";
}

ScenarioName parse_scenario_name(std::string_view name) {
  return parse_enum(name, kAllScenarios, "scenario");
}

std::string_view to_string(ErrorVariant variant) {
  switch (variant) {
    case ErrorVariant::kNone:
      return "none";
    case ErrorVariant::kNotice:
      return "ne";
    case ErrorVariant::kForecast:
      return "fe";
    case ErrorVariant::kInference:
      return "ie";
  }
  return "unknown";
}

ErrorVariant parse_error_variant(std::string_view name) {
  return parse_enum(name, kAllErrorVariants, "error variant");
}

std::string_view to_string(ModelKind model) {
  return model == ModelKind::kBaseline ? "baseline" : "human";
}

ModelKind parse_model_kind(std::string_view name) { return parse_enum(name, kAllModels, "model"); }

bool ScriptedEvent::applies_to(ErrorVariant variant) const {
  return error_variants.empty() ||
         std::find(error_variants.begin(), error_variants.end(), variant) != error_variants.end();
}

const VehicleSpec& ScenarioSpec::vehicle(std::string_view id) const {
  for (const auto& v : vehicles) {
    if (v.id == id) return v;
  }
  throw InvalidInput("scenario has no vehicle '" + std::string(id) + "'");
}

PathPtr ScenarioSpec::path(std::string_view name) const {
  const auto it = paths.find(std::string(name));
  if (it == paths.end()) throw InvalidInput("scenario has no path '" + std::string(name) + "'");
  return it->second;
}

PathPtr ScenarioSpec::predicted_path() const {
  return target_predicted_path.empty() ? nullptr : path(target_predicted_path);
}

void ScenarioSpec::validate() const {
  const std::string where = std::string(to_string(name)) + " " + std::to_string(variation) + ": ";
  if (variation < 1 || variation > 3) throw InvalidInput(where + "variation must be 1..3");
  if (!(duration > 0.0)) throw InvalidInput(where + "duration must be > 0");
  if (!(ego_desired_speed > 0.0) || !(ego_speed_limit > 0.0)) {
    throw InvalidInput(where + "ego speeds must be > 0");
  }
  for (const auto& [pname, p] : paths) {
    if (!p) throw InvalidInput(where + "path '" + pname + "' is empty");
  }
  std::vector<std::string> ids;
  for (const auto& v : vehicles) {
    if (std::find(ids.begin(), ids.end(), v.id) != ids.end()) {
      throw InvalidInput(where + "duplicate vehicle id '" + v.id + "'");
    }
    ids.push_back(v.id);
    VehicleState state{path(v.path), v.arc_position, v.speed, v.footprint_radius};
    state.validate();
  }
  if (std::find(ids.begin(), ids.end(), std::string(kEgoId)) == ids.end()) {
    throw InvalidInput(where + "scenario has no ego vehicle");
  }
  if (target_object == kEgoId ||
      std::find(ids.begin(), ids.end(), target_object) == ids.end()) {
    throw InvalidInput(where + "target object '" + target_object + "' does not exist");
  }
  if (!target_predicted_path.empty()) path(target_predicted_path);
  for (const auto& e : events) {
    if (!(e.trigger_time >= 0.0)) throw InvalidInput(where + "event trigger time must be >= 0");
    vehicle(e.vehicle_id);
    if (const auto* sw = std::get_if<PathSwitch>(&e.action)) {
      path(sw->path);
    } else {
      std::get<MotionPlan>(e.action).validate();
    }
  }
}

bool ScenarioSpec::operator==(const ScenarioSpec& other) const {
  if (paths.size() != other.paths.size()) return false;
  for (const auto& [pname, p] : paths) {
    const auto it = other.paths.find(pname);
    if (it == other.paths.end() || !(*p == *it->second)) return false;
  }
  return name == other.name && variation == other.variation &&
         varied_axis == other.varied_axis && vehicles == other.vehicles &&
         events == other.events && target_object == other.target_object &&
         target_predicted_path == other.target_predicted_path &&
         ego_desired_speed == other.ego_desired_speed &&
         ego_speed_limit == other.ego_speed_limit && duration == other.duration;
}

void ScenarioCatalog::add(ScenarioSpec spec) {
  spec.validate();
  const auto key = std::make_pair(spec.name, spec.variation);
  specs_[key] = std::make_shared<const ScenarioSpec>(std::move(spec));
}

ScenarioPtr ScenarioCatalog::get(ScenarioName name, int variation) const {
  const auto it = specs_.find({name, variation});
  if (it == specs_.end()) {
    throw InvalidInput("no scenario " + std::string(to_string(name)) + " variation " +
                       std::to_string(variation));
  }
  return it->second;
}

std::vector<ScenarioPtr> ScenarioCatalog::all() const {
  std::vector<ScenarioPtr> out;
  for (const auto& [key, spec] : specs_) out.push_back(spec);
  return out;
}

const ScenarioCatalog& builtin_catalog() {
  static const ScenarioCatalog catalog = [] {
    ScenarioCatalog c;
    for (ScenarioName name : kAllScenarios) {
      for (int v = 1; v <= 3; ++v) c.add(build_scenario(name, v));
    }
    return c;
  }();
  return catalog;
}

std::string scenario_file_name(ScenarioName name) { return std::string(to_string(name)) + ".json"; }

std::string scenario_to_json(std::span<const ScenarioSpec> variations) {
  if (variations.empty()) throw InvalidInput("no scenario variations to serialize");
  ordered_json j;
  j["scenario"] = std::string(to_string(variations.front().name));
  j["varied_axis"] = variations.front().varied_axis;
  ordered_json list = ordered_json::array();
  for (const auto& spec : variations) list.push_back(spec_to_json(spec));
  j["variations"] = list;
  return j.dump(2) + "\n";
}

std::vector<ScenarioSpec> scenarios_from_json(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    std::vector<ScenarioSpec> out;
    for (const auto& v : j.at("variations")) out.push_back(spec_from_json(v));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed scenario file: ") + e.what());
  }
}

ScenarioCatalog load_catalog(const std::filesystem::path& dir) {
  ScenarioCatalog catalog;
  for (ScenarioName name : kAllScenarios) {
    const auto file = dir / scenario_file_name(name);
    std::ifstream in(file);
    if (!in) throw InvalidInput("cannot open scenario file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      for (auto& spec : scenarios_from_json(buf.str())) {
        if (spec.name != name) throw InvalidInput("file holds scenario " + std::string(to_string(spec.name)));
        catalog.add(std::move(spec));
      }
    } catch (const InvalidInput& e) {
      throw InvalidInput(file.string() + ": " + e.what());
    }
    for (int v = 1; v <= 3; ++v) catalog.get(name, v);
  }
  return catalog;
}

void save_catalog(const ScenarioCatalog& catalog, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (ScenarioName name : kAllScenarios) {
    std::vector<ScenarioSpec> variations;
    for (int v = 1; v <= 3; ++v) variations.push_back(*catalog.get(name, v));
    const auto file = dir / scenario_file_name(name);
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write scenario file " + file.string());
    out << scenario_to_json(variations);
  }
}

std::vector<EpisodeConfig> variation_grid(const ScenarioCatalog& catalog) {
  std::vector<EpisodeConfig> grid;
  grid.reserve(std::size(kAllScenarios) * 3 * 4 * 3 * 2);
  for (ScenarioName name : kAllScenarios) {
    for (int v = 1; v <= 3; ++v) {
      const ScenarioPtr spec = catalog.get(name, v);
      for (ErrorVariant error : kAllErrorVariants) {
        for (DriverType driver : kAllDriverTypes) {
          for (ModelKind model : kAllModels) grid.push_back({spec, error, driver, model});
        }
      }
    }
  }
  return grid;
}

}  // namespace riskwarn
