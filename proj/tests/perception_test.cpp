#include "riskwarn/errors.hpp"
#include "riskwarn/perception.hpp"
#include "riskwarn/personalization.hpp"

#include <gtest/gtest.h>

#include <random>

namespace riskwarn {
namespace {

TEST(NoticeError, ThresholdAtOneHalf) {
  EXPECT_EQ(apply_notice_error(0.0), Awareness::kAware);
  EXPECT_EQ(apply_notice_error(0.49), Awareness::kAware);
  EXPECT_EQ(apply_notice_error(0.5), Awareness::kNotAware);
  EXPECT_EQ(apply_notice_error(1.0), Awareness::kNotAware);
  EXPECT_THROW(apply_notice_error(1.1), InvalidInput);
  EXPECT_THROW(apply_notice_error(-0.1), InvalidInput);
}

TEST(ForecastError, OffsetAndClamp) {
  EXPECT_DOUBLE_EQ(apply_forecast_error(10.0, 1.0, -4.0), 6.0);
  EXPECT_DOUBLE_EQ(apply_forecast_error(10.0, 0.5, -4.0), 8.0);
  EXPECT_DOUBLE_EQ(apply_forecast_error(10.0, 0.0, -4.0), 10.0);
  EXPECT_DOUBLE_EQ(apply_forecast_error(3.0, 1.0, -4.0), 0.0);
}

TEST(ForecastError, NeverNegative) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    EXPECT_GE(apply_forecast_error(15.0 * u(rng), u(rng), -10.0 * u(rng)), 0.0);
  }
}

class InferenceTest : public ::testing::Test {
 protected:
  PathPtr objective = std::make_shared<const DrivingPath>(std::vector<Vec2>{{0, 0}, {100, 0}});
  PathPtr wrong = std::make_shared<const DrivingPath>(std::vector<Vec2>{{0, 0}, {0, 100}});
};

TEST_F(InferenceTest, BelowThresholdKeepsObjective) {
  const PerceivedMotion m = apply_inference_error(0.2, objective, wrong, -1.5, 3.0);
  EXPECT_EQ(m.path, objective);
  EXPECT_TRUE(m.plan.empty());
}

TEST_F(InferenceTest, WrongPathWins) {
  const PerceivedMotion m = apply_inference_error(1.0, objective, wrong, -1.5, 3.0);
  EXPECT_EQ(m.path, wrong);
  EXPECT_TRUE(m.plan.empty());
}

TEST_F(InferenceTest, WrongIntentWithoutPath) {
  const PerceivedMotion m = apply_inference_error(0.5, objective, nullptr, -1.5, 3.0);
  EXPECT_EQ(m.path, objective);
  EXPECT_EQ(m.plan, (MotionPlan{{{-1.5, 3.0}}}));
}

class PerceivedWorldTest : public ::testing::Test {
 protected:
  PathPtr lane = std::make_shared<const DrivingPath>(std::vector<Vec2>{{0, 0}, {300, 0}});
  PathPtr left = std::make_shared<const DrivingPath>(std::vector<Vec2>{{0, 3.5}, {300, 3.5}});
  PathPtr exit = std::make_shared<const DrivingPath>(
      std::vector<Vec2>{{0, 3.5}, {40, 3.5}, {60, 20}, {60, 100}});
  WorldSnapshot objective;
  DriverErrorState errors;

  void SetUp() override {
    objective.ego = {lane, 0.0, 10.0, 1.0};
    objective.others.push_back({"target", {left, 30.0, 8.0, 1.0}, {}, true});
    objective.others.push_back({"bystander", {lane, 60.0, 5.0, 1.0}, {}, true});
    errors.target_object = "target";
    errors.predicted_path = exit;
  }
};

TEST_F(PerceivedWorldTest, ZeroErrorsIsIdentity) {
  EXPECT_EQ(build_perceived_world(objective, errors), objective);
  const PlannerConfig cfg = PlannerConfig::from(ModelParameters{});
  const DriverProfile prof = profile_for(DriverType::kNormal);
  const PlanResult a = perceived_plan(objective, errors, prof, cfg);
  const PlanResult b = plan(objective, prof.alpha, cfg);
  EXPECT_EQ(a.v_tar, b.v_tar);
  ASSERT_EQ(a.costs.size(), b.costs.size());
  for (std::size_t i = 0; i < a.costs.size(); ++i) EXPECT_EQ(a.costs[i].total, b.costs[i].total);
}

TEST_F(PerceivedWorldTest, OnlyTargetIsTransformed) {
  errors.ne = 1.0;
  const auto ne = build_perceived_world(objective, errors);
  EXPECT_FALSE(ne.others[0].aware);
  EXPECT_EQ(ne.others[1], objective.others[1]);
  EXPECT_EQ(ne.ego, objective.ego);

  errors.ne = 0.0;
  errors.fe = 1.0;
  const auto fe = build_perceived_world(objective, errors);
  EXPECT_DOUBLE_EQ(fe.others[0].state.speed, 4.0);
  EXPECT_EQ(fe.others[1], objective.others[1]);
}

TEST_F(PerceivedWorldTest, InferenceErrorMovesTargetOntoPredictedPath) {
  errors.ie = 1.0;
  const auto ie = build_perceived_world(objective, errors);
  EXPECT_EQ(ie.others[0].state.path, exit);
  const Vec2 before = world_position(objective.others[0].state).position;
  const Vec2 after = world_position(ie.others[0].state).position;
  EXPECT_NEAR((after - before).norm(), 0.0, 1e-9);
}

TEST_F(PerceivedWorldTest, MissingTargetThrowsOnlyWithErrors) {
  errors.target_object = "ghost";
  EXPECT_NO_THROW(build_perceived_world(objective, errors));
  errors.fe = 1.0;
  EXPECT_THROW(build_perceived_world(objective, errors), InvalidInput);
}

TEST_F(PerceivedWorldTest, NoticeErrorRemovesTargetRisk) {
  objective.others.pop_back();
  errors.ne = 1.0;
  const PlannerConfig cfg = PlannerConfig::from(ModelParameters{});
  const PlanResult r = perceived_plan(objective, errors, profile_for(DriverType::kDefensive), cfg);
  for (const auto& c : r.costs) EXPECT_EQ(c.risk, 0.0);
}

}  // namespace
}  // namespace riskwarn
