#include "riskwarn/risk.hpp"

#include "riskwarn/errors.hpp"
#include "riskwarn/personalization.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace riskwarn {

void UncertaintyConfig::validate() const {
  if (!(sigma0_long > 0.0 && sigma0_lat > 0.0 && sigma_max_long > 0.0 && sigma_max_lat > 0.0)) {
    throw InvalidParameter("uncertainty sigmas must be > 0");
  }
  if (sigma_max_long < sigma0_long || sigma_max_lat < sigma0_lat) {
    throw InvalidParameter("maximum uncertainty must not be smaller than the initial one");
  }
  if (!(horizon > 0.0)) {
    throw InvalidParameter("uncertainty horizon must be > 0");
  }
}

void SurvivalConfig::validate() const {
  if (!(tau > 0.0)) throw InvalidParameter("survival tau must be > 0");
  if (!(s_max > 0.0)) throw InvalidParameter("prediction horizon s_max must be > 0");
}

Mat2 covariance_at(const UncertaintyConfig& cfg, double s, double alpha, double heading) {
  if (!(alpha > 0.0)) {
    throw InvalidParameter("risk factor alpha must be > 0");
  }
  if (!(s >= 0.0)) {
    throw InvalidParameter("prediction offset must be >= 0");
  }
  const double growth = std::min(s / cfg.horizon, 1.0);
  const double sd_long = cfg.sigma0_long + alpha * cfg.sigma_max_long * growth;
  const double sd_lat = cfg.sigma0_lat + alpha * cfg.sigma_max_lat * growth;

  const double c = std::cos(heading);
  const double sn = std::sin(heading);
  Mat2 rot;
  rot << c, -sn, sn, c;
  const Mat2 local = Eigen::Vector2d(sd_long * sd_long, sd_lat * sd_lat).asDiagonal();
  Mat2 world = rot * local * rot.transpose();
  // Keep the result exactly symmetric.
  world(0, 1) = world(1, 0) = 0.5 * (world(0, 1) + world(1, 0));
  return world;
}

double collision_probability(const Vec2& mu1, const Vec2& mu2, const Mat2& s1, const Mat2& s2,
                             double collision_area) {
  const Mat2 sum = s1 + s2;
  const double det = sum.determinant();
  if (!(det > 0.0) || !(sum(0, 0) > 0.0) || !std::isfinite(det)) {
    throw NumericDegeneracy("covariance sum is not positive definite");
  }
  const Vec2 d = mu2 - mu1;
  // Closed-form 2x2 inverse quadratic form.
  const double q = (sum(1, 1) * d.x() * d.x() - 2.0 * sum(0, 1) * d.x() * d.y() +
                    sum(0, 0) * d.y() * d.y()) /
                   det;
  const double norm = 2.0 * std::numbers::pi * std::sqrt(det);  // sqrt(det(2 pi S)) in 2D
  return collision_area * std::exp(-0.5 * q) / norm;
}

double survival(double s, const SurvivalConfig& cfg) { return std::exp(-s / cfg.tau); }

double integrate_risk(std::span<const RiskProfileSample> profile, const SurvivalConfig& cfg) {
  if (profile.size() < 2) return 0.0;
  double total = 0.0;
  double prev = profile[0].p_coll * survival(profile[0].s, cfg);
  for (std::size_t i = 1; i < profile.size(); ++i) {
    const double cur = profile[i].p_coll * survival(profile[i].s, cfg);
    total += 0.5 * (prev + cur) * (profile[i].s - profile[i - 1].s);
    prev = cur;
  }
  return total;
}

std::vector<RiskProfileSample> risk_profile(const Prediction& ego, const Prediction& other,
                                            const RiskModelConfig& cfg, double alpha) {
  if (ego.size() != other.size()) {
    throw InvalidInput("ego and other predictions have different sample counts");
  }
  std::vector<RiskProfileSample> profile;
  profile.reserve(ego.size());
  for (std::size_t i = 0; i < ego.size(); ++i) {
    if (ego[i].time != other[i].time) {
      throw InvalidInput("ego and other predictions are sampled on different grids");
    }
    const double s = ego[i].time;
    const Mat2 s1 = covariance_at(cfg.ego_uncertainty, s, alpha, ego[i].pose.heading);
    const Mat2 s2 = covariance_at(cfg.other_uncertainty, s, alpha, other[i].pose.heading);
    profile.push_back(
        {s, collision_probability(ego[i].pose.position, other[i].pose.position, s1, s2,
                                  cfg.collision_area)});
  }
  return profile;
}

double risk_between(const Prediction& ego, const Prediction& other, const RiskModelConfig& cfg,
                    double alpha) {
  const auto profile = risk_profile(ego, other, cfg, alpha);
  return integrate_risk(profile, cfg.survival);
}

double total_risk(const Prediction& ego, std::span<const Prediction> others,
                  const RiskModelConfig& cfg, double alpha) {
  double sum = 0.0;
  for (const auto& other : others) sum += risk_between(ego, other, cfg, alpha);
  return sum;
}

double warning_signal(double risk, const DriverProfile& profile) { return profile.weight * risk; }

}  // namespace riskwarn
