#include "riskwarn/errors.hpp"
#include "riskwarn/personalization.hpp"
#include "riskwarn/risk.hpp"

#include <Eigen/LU>
#include <gtest/gtest.h>

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <random>

namespace riskwarn {
namespace {

Mat2 random_spd(std::mt19937& rng) {
  std::uniform_real_distribution<double> sd(0.3, 3.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  const double a = ang(rng);
  Mat2 r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  const double s1 = sd(rng);
  const double s2 = sd(rng);
  return r * Eigen::Vector2d(s1 * s1, s2 * s2).asDiagonal() * r.transpose();
}

TEST(Covariance, AxisAlignedAtZeroHeading) {
  const UncertaintyConfig cfg;
  const Mat2 c0 = covariance_at(cfg, 0.0, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(c0(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(c0(1, 1), 0.25);
  EXPECT_DOUBLE_EQ(c0(0, 1), 0.0);
  const Mat2 c4 = covariance_at(cfg, 4.0, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(c4(0, 0), std::pow(0.5 + 0.5 * 6.0 * 0.5, 2));
  EXPECT_DOUBLE_EQ(c4(1, 1), std::pow(0.5 + 0.5 * 1.5 * 0.5, 2));
}

TEST(Covariance, RotatesWithHeading) {
  const UncertaintyConfig cfg;
  const Mat2 c = covariance_at(cfg, 8.0, 1.0, std::numbers::pi / 2);
  EXPECT_NEAR(c(1, 1), 6.5 * 6.5, 1e-9);
  EXPECT_NEAR(c(0, 0), 2.0 * 2.0, 1e-9);
  EXPECT_EQ(c(0, 1), c(1, 0));
}

TEST(Covariance, SaturatesAndGrowsMonotonically) {
  const UncertaintyConfig cfg;
  EXPECT_EQ(covariance_at(cfg, 8.0, 0.7, 0.3), covariance_at(cfg, 12.0, 0.7, 0.3));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double s = 8.0 * u(rng);
    const double a = 0.01 + u(rng);
    const double h = 6.0 * u(rng);
    const Mat2 c = covariance_at(cfg, s, a, h);
    EXPECT_GT(c.determinant(), 0.0);
    EXPECT_GE(covariance_at(cfg, s + 0.5, a, h).determinant(), c.determinant());
    EXPECT_GE(covariance_at(cfg, s, a + 0.1, h).determinant(), c.determinant());
  }
}

TEST(Covariance, RejectsInvalidArguments) {
  const UncertaintyConfig cfg;
  EXPECT_THROW(covariance_at(cfg, 1.0, 0.0, 0.0), InvalidParameter);
  EXPECT_THROW(covariance_at(cfg, -0.1, 0.5, 0.0), InvalidParameter);
}

TEST(CollisionProbability, PeakValueAtCoincidentMeans) {
  const Mat2 s = Mat2::Identity();
  const double p = collision_probability({0, 0}, {0, 0}, s, s, 4.0);
  EXPECT_NEAR(p, 4.0 / (2.0 * std::numbers::pi * 2.0), 1e-12);
}

TEST(CollisionProbability, SymmetricAndDecaying) {
  std::mt19937 rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Mat2 s1 = random_spd(rng);
    const Mat2 s2 = random_spd(rng);
    const Vec2 m1(n(rng), n(rng));
    const Vec2 m2(n(rng), n(rng));
    const double p = collision_probability(m1, m2, s1, s2, 4.0);
    EXPECT_NEAR(p, collision_probability(m2, m1, s2, s1, 4.0), 1e-15);
    EXPECT_LE(p, collision_probability(m1, m1, s1, s2, 4.0) + 1e-15);
    EXPECT_GE(p, 0.0);
  }
}

// Product-integral oracle: E_{x ~ N(mu1, S1)}[N(x; mu2, S2)] by sampling.
TEST(CollisionProbability, MatchesMonteCarloOracle) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> z(0.0, 1.0);
  std::mt19937 case_rng(9);
  std::normal_distribution<double> offset(0.0, 1.0);
  for (int c = 0; c < 10; ++c) {
    const Mat2 s1 = random_spd(case_rng);
    const Mat2 s2 = random_spd(case_rng);
    const Vec2 mu1(0.0, 0.0);
    const Vec2 mu2(offset(case_rng), offset(case_rng));
    const Mat2 l1 = s1.llt().matrixL();
    const Mat2 s2_inv = s2.inverse();
    const double norm2 = 1.0 / (2.0 * std::numbers::pi * std::sqrt(s2.determinant()));
    const int n = 200000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vec2 x = mu1 + l1 * Vec2(z(rng), z(rng));
      const Vec2 d = x - mu2;
      acc += norm2 * std::exp(-0.5 * d.dot(s2_inv * d));
    }
    const double mc = 4.0 * acc / n;
    EXPECT_NEAR(collision_probability(mu1, mu2, s1, s2, 4.0), mc, 0.03 * mc);
  }
}

TEST(CollisionProbability, DegenerateCovarianceThrows) {
  EXPECT_THROW(collision_probability({0, 0}, {1, 0}, Mat2::Zero(), Mat2::Zero(), 4.0),
               NumericDegeneracy);
}

TEST(Survival, Values) {
  const SurvivalConfig cfg;
  EXPECT_DOUBLE_EQ(survival(0.0, cfg), 1.0);
  EXPECT_DOUBLE_EQ(survival(4.0, cfg), std::exp(-1.0));
}

TEST(IntegrateRisk, ConstantProfileClosedForm) {
  const SurvivalConfig cfg;
  std::vector<RiskProfileSample> prof;
  for (int i = 0; i <= 40; ++i) prof.push_back({0.2 * i, 0.3});
  const double exact = 0.3 * 4.0 * (1.0 - std::exp(-2.0));
  EXPECT_NEAR(integrate_risk(prof, cfg), exact, 1e-3 * exact);
  EXPECT_DOUBLE_EQ(integrate_risk({}, cfg), 0.0);
  const std::vector<RiskProfileSample> one{{0.0, 1.0}};
  EXPECT_DOUBLE_EQ(integrate_risk(one, cfg), 0.0);
}

TEST(IntegrateRisk, LinearInProfile) {
  const SurvivalConfig cfg;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RiskProfileSample> a;
  std::vector<RiskProfileSample> b;
  std::vector<RiskProfileSample> sum;
  for (int i = 0; i <= 40; ++i) {
    a.push_back({0.2 * i, u(rng)});
    b.push_back({0.2 * i, u(rng)});
    sum.push_back({0.2 * i, a.back().p_coll + 2.0 * b.back().p_coll});
  }
  EXPECT_NEAR(integrate_risk(sum, cfg), integrate_risk(a, cfg) + 2.0 * integrate_risk(b, cfg), 1e-12);
}

class RiskBetweenTest : public ::testing::Test {
 protected:
  PathPtr lane = std::make_shared<const DrivingPath>(std::vector<Vec2>{{0, 0}, {500, 0}});
  PathPtr far_lane = std::make_shared<const DrivingPath>(std::vector<Vec2>{{0, 500}, {500, 500}});
  RiskModelConfig cfg;
};

TEST_F(RiskBetweenTest, ZeroForDistantVehicles) {
  const Prediction ego = predict({lane, 0.0, 10.0, 1.0}, {}, 8.0, 0.2);
  const Prediction other = predict({far_lane, 0.0, 10.0, 1.0}, {}, 8.0, 0.2);
  EXPECT_LT(risk_between(ego, other, cfg, 1.0), 1e-300);
  EXPECT_DOUBLE_EQ(total_risk(ego, {}, cfg, 1.0), 0.0);
}

TEST_F(RiskBetweenTest, CloserMeansRiskier) {
  const Prediction ego = predict({lane, 0.0, 10.0, 1.0}, {}, 8.0, 0.2);
  const Prediction near = predict({lane, 20.0, 5.0, 1.0}, {}, 8.0, 0.2);
  const Prediction far = predict({lane, 60.0, 5.0, 1.0}, {}, 8.0, 0.2);
  EXPECT_GT(risk_between(ego, near, cfg, 0.5), risk_between(ego, far, cfg, 0.5));
  const std::vector<Prediction> both{near, far};
  EXPECT_NEAR(total_risk(ego, both, cfg, 0.5),
              risk_between(ego, near, cfg, 0.5) + risk_between(ego, far, cfg, 0.5), 1e-15);
}

TEST_F(RiskBetweenTest, MismatchedGridsThrow) {
  const Prediction ego = predict({lane, 0.0, 10.0, 1.0}, {}, 8.0, 0.2);
  const Prediction other = predict({lane, 20.0, 5.0, 1.0}, {}, 4.0, 0.2);
  EXPECT_THROW(risk_between(ego, other, cfg, 0.5), InvalidInput);
}

TEST(WarningSignal, ScalesByWeight) {
  EXPECT_DOUBLE_EQ(warning_signal(0.2, DriverProfile{DriverType::kDefensive, 1.0, 10.0}), 2.0);
  EXPECT_DOUBLE_EQ(warning_signal(0.0, DriverProfile{DriverType::kConfident, 0.04, 0.1}), 0.0);
}

}  // namespace
}  // namespace riskwarn
