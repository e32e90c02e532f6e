#pragma once

#include "riskwarn/personalization.hpp"
#include "riskwarn/world.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace riskwarn {

enum class ScenarioName {
  kMotorcycleLaneChange,
  kCarOvertaking,
  kPriorityIntersection,
  kCurveIntersection,
  kBicycleCutin,
  kPedestrianCutin,
};

inline constexpr ScenarioName kAllScenarios[] = {
    ScenarioName::kMotorcycleLaneChange, ScenarioName::kCarOvertaking,
    ScenarioName::kPriorityIntersection, ScenarioName::kCurveIntersection,
    ScenarioName::kBicycleCutin,         ScenarioName::kPedestrianCutin,
};

std::string_view to_string(ScenarioName name);
ScenarioName parse_scenario_name(std::string_view name);

/// Driver-error variants of the experiment protocol: no error, or NE / FE / IE
/// equal to 1 on the scenario's target object.
enum class ErrorVariant { kNone, kNotice, kForecast, kInference };

inline constexpr ErrorVariant kAllErrorVariants[] = {ErrorVariant::kNone, ErrorVariant::kNotice,
                                                     ErrorVariant::kForecast,
                                                     ErrorVariant::kInference};

std::string_view to_string(ErrorVariant variant);
ErrorVariant parse_error_variant(std::string_view name);

enum class ModelKind { kBaseline, kHumanBased };

std::string_view to_string(ModelKind model);
ModelKind parse_model_kind(std::string_view name);

inline constexpr std::string_view kEgoId = "ego";

struct VehicleSpec {
  std::string id;
  std::string path;
  double arc_position = 0.0;
  double speed = 0.0;
  double footprint_radius = 1.0;

  bool operator==(const VehicleSpec&) const = default;
};

struct PathSwitch {
  std::string path;

  bool operator==(const PathSwitch&) const = default;
};

/// At `trigger_time` the vehicle either moves onto another path (keeping its
/// world position) or starts executing a motion plan, replacing any plan in
/// progress. An empty `error_variants` list means the event fires in every
/// variant.
struct ScriptedEvent {
  double trigger_time = 0.0;
  std::string vehicle_id;
  std::variant<PathSwitch, MotionPlan> action;
  std::vector<ErrorVariant> error_variants;

  bool applies_to(ErrorVariant variant) const;
  bool operator==(const ScriptedEvent&) const = default;
};

struct ScenarioSpec {
  ScenarioName name = ScenarioName::kMotorcycleLaneChange;
  int variation = 1;
  std::string varied_axis;
  std::map<std::string, PathPtr> paths;
  std::vector<VehicleSpec> vehicles;
  std::vector<ScriptedEvent> events;
  std::string target_object;
  std::string target_predicted_path;  // empty when the target has a single path
  double ego_desired_speed = 10.0;
  double ego_speed_limit = 10.0;
  double duration = 12.0;

  /// Throws InvalidInput when an invariant is violated.
  void validate() const;

  const VehicleSpec& vehicle(std::string_view id) const;
  PathPtr path(std::string_view name) const;
  PathPtr predicted_path() const;

  bool operator==(const ScenarioSpec& other) const;
};

using ScenarioPtr = std::shared_ptr<const ScenarioSpec>;

/// All variations of all scenarios, keyed by (name, variation).
class ScenarioCatalog {
 public:
  void add(ScenarioSpec spec);
  ScenarioPtr get(ScenarioName name, int variation) const;
  std::vector<ScenarioPtr> all() const;
  std::size_t size() const { return specs_.size(); }

 private:
  std::map<std::pair<ScenarioName, int>, ScenarioPtr> specs_;
};

/// Built-in scenario definitions (see scenario_catalog.cpp).
ScenarioSpec build_scenario(ScenarioName name, int variation);
const ScenarioCatalog& builtin_catalog();

std::string scenario_file_name(ScenarioName name);
std::string scenario_to_json(std::span<const ScenarioSpec> variations);
std::vector<ScenarioSpec> scenarios_from_json(std::string_view text);

/// Reads one file per scenario; every scenario must provide variations 1..3.
ScenarioCatalog load_catalog(const std::filesystem::path& dir);
void save_catalog(const ScenarioCatalog& catalog, const std::filesystem::path& dir);

struct EpisodeConfig {
  ScenarioPtr scenario;
  ErrorVariant error = ErrorVariant::kNone;
  DriverType driver = DriverType::kNormal;
  ModelKind model = ModelKind::kBaseline;
};

/// Full cross product, ordered scenario, variation, error variant, driver
/// type, model (baseline first).
std::vector<EpisodeConfig> variation_grid(const ScenarioCatalog& catalog = builtin_catalog());

}  // namespace riskwarn
