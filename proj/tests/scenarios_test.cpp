#include "riskwarn/errors.hpp"
#include "riskwarn/harness.hpp"
#include "riskwarn/scenarios.hpp"

#include <gtest/gtest.h>

#include <fstream>

namespace riskwarn {
namespace {

const std::filesystem::path kShipped = std::filesystem::path(RISKWARN_SOURCE_DIR) / "data/scenarios";

TEST(Catalog, BuildsAllVariationsDeterministically) {
  const auto& cat = builtin_catalog();
  EXPECT_EQ(cat.size(), 18u);
  for (ScenarioName name : kAllScenarios) {
    for (int v = 1; v <= 3; ++v) {
      const ScenarioSpec spec = build_scenario(name, v);
      EXPECT_NO_THROW(spec.validate());
      EXPECT_EQ(spec, build_scenario(name, v));
      EXPECT_EQ(spec, *cat.get(name, v));
      EXPECT_FALSE(spec.target_object.empty());
    }
  }
  EXPECT_THROW(build_scenario(ScenarioName::kCarOvertaking, 4), InvalidInput);
}

TEST(Catalog, VariationsDiffer) {
  for (ScenarioName name : kAllScenarios) {
    EXPECT_FALSE(build_scenario(name, 1) == build_scenario(name, 2)) << to_string(name);
    EXPECT_FALSE(build_scenario(name, 2) == build_scenario(name, 3)) << to_string(name);
  }
}

TEST(Catalog, ShippedFilesMatchBuiltins) {
  const ScenarioCatalog loaded = load_catalog(kShipped);
  ASSERT_EQ(loaded.size(), 18u);
  for (const auto& spec : builtin_catalog().all()) {
    EXPECT_EQ(*loaded.get(spec->name, spec->variation), *spec)
        << to_string(spec->name) << " " << spec->variation;
  }
}

TEST(Catalog, JsonRoundTrip) {
  for (ScenarioName name : kAllScenarios) {
    std::vector<ScenarioSpec> specs;
    for (int v = 1; v <= 3; ++v) specs.push_back(build_scenario(name, v));
    const auto back = scenarios_from_json(scenario_to_json(specs));
    ASSERT_EQ(back.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(back[i], specs[i]);
  }
}

TEST(Catalog, SaveLoadDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "riskwarn_scenarios_test";
  std::filesystem::remove_all(dir);
  save_catalog(builtin_catalog(), dir);
  const auto loaded = load_catalog(dir);
  for (const auto& spec : builtin_catalog().all()) {
    EXPECT_EQ(*loaded.get(spec->name, spec->variation), *spec);
  }
  std::filesystem::remove_all(dir);
}

TEST(Catalog, BadInputThrows) {
  EXPECT_THROW(load_catalog("/nonexistent/riskwarn"), InvalidInput);
  EXPECT_THROW(scenarios_from_json("not json"), InvalidInput);
  EXPECT_THROW(scenarios_from_json("[]"), InvalidInput);

  const auto dir = std::filesystem::temp_directory_path() / "riskwarn_scenarios_bad";
  std::filesystem::remove_all(dir);
  save_catalog(builtin_catalog(), dir);
  std::ofstream(dir / scenario_file_name(ScenarioName::kBicycleCutin)) << "{\"broken\": ";
  EXPECT_THROW(load_catalog(dir), InvalidInput);
  std::filesystem::remove_all(dir);
}

TEST(Catalog, ValidateCatchesBrokenSpecs) {
  auto spec = build_scenario(ScenarioName::kPriorityIntersection, 1);
  spec.target_object = "nobody";
  EXPECT_THROW(spec.validate(), InvalidInput);
  spec = build_scenario(ScenarioName::kPriorityIntersection, 1);
  spec.duration = 0.0;
  EXPECT_THROW(spec.validate(), InvalidInput);
  spec = build_scenario(ScenarioName::kPriorityIntersection, 1);
  spec.vehicles.push_back(spec.vehicles.front());
  EXPECT_THROW(spec.validate(), InvalidInput);
}

TEST(Names, RoundTrip) {
  for (ScenarioName n : kAllScenarios) EXPECT_EQ(parse_scenario_name(to_string(n)), n);
  for (ErrorVariant e : kAllErrorVariants) EXPECT_EQ(parse_error_variant(to_string(e)), e);
  for (ModelKind m : {ModelKind::kBaseline, ModelKind::kHumanBased}) {
    EXPECT_EQ(parse_model_kind(to_string(m)), m);
  }
  EXPECT_THROW(parse_scenario_name("roundabout"), InvalidInput);
  EXPECT_THROW(parse_error_variant("xe"), InvalidInput);
}

TEST(Grid, OrderAndSize) {
  const auto grid = variation_grid();
  ASSERT_EQ(grid.size(), 432u);
  std::size_t i = 0;
  for (ScenarioName name : kAllScenarios) {
    for (int v = 1; v <= 3; ++v) {
      for (ErrorVariant e : kAllErrorVariants) {
        for (DriverType d : kAllDriverTypes) {
          for (ModelKind m : {ModelKind::kBaseline, ModelKind::kHumanBased}) {
            const auto& c = grid[i++];
            EXPECT_EQ(c.scenario->name, name);
            EXPECT_EQ(c.scenario->variation, v);
            EXPECT_EQ(c.error, e);
            EXPECT_EQ(c.driver, d);
            EXPECT_EQ(c.model, m);
          }
        }
      }
    }
  }
}

TEST(Events, VariantFilter) {
  ScriptedEvent any{1.0, "ego", MotionPlan{}, {}};
  EXPECT_TRUE(any.applies_to(ErrorVariant::kNone));
  EXPECT_TRUE(any.applies_to(ErrorVariant::kInference));
  ScriptedEvent fe{1.0, "ego", MotionPlan{}, {ErrorVariant::kForecast}};
  EXPECT_TRUE(fe.applies_to(ErrorVariant::kForecast));
  EXPECT_FALSE(fe.applies_to(ErrorVariant::kNone));
}

// Ground truth of the designed scenarios: error-free drives stay uncritical,
// an unnoticed target always ends critical.
TEST(GroundTruth, CriticalityByErrorVariant) {
  const ModelParameters params;
  for (const auto& spec : builtin_catalog().all()) {
    for (ErrorVariant e : {ErrorVariant::kNone, ErrorVariant::kNotice}) {
      const EpisodeResult r = run_episode({spec, e, DriverType::kNormal, ModelKind::kBaseline}, params);
      EXPECT_EQ(r.critical, e == ErrorVariant::kNotice)
          << to_string(spec->name) << " " << spec->variation << " " << to_string(e);
    }
  }
}

}  // namespace
}  // namespace riskwarn
