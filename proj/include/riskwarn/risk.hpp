#pragma once

#include "riskwarn/world.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace riskwarn {

struct DriverProfile;

using Mat2 = Eigen::Matrix2d;

/// Positional uncertainty that grows linearly with the prediction offset and
/// saturates at `horizon`. The risk factor scales only the growth term.
struct UncertaintyConfig {
  double sigma0_long = 0.5;     // [m]
  double sigma0_lat = 0.5;      // [m]
  double sigma_max_long = 6.0;  // [m] growth reached at the horizon for alpha = 1
  double sigma_max_lat = 1.5;   // [m]
  double horizon = 8.0;         // [s]

  void validate() const;
};

struct SurvivalConfig {
  double tau = 4.0;    // [s] decay time constant
  double s_max = 8.0;  // [s] prediction horizon

  void validate() const;
};

struct RiskProfileSample {
  double s = 0.0;
  double p_coll = 0.0;
};

/// Everything the collision-risk integral needs besides the two predictions
/// and the risk factor.
struct RiskModelConfig {
  UncertaintyConfig ego_uncertainty;
  UncertaintyConfig other_uncertainty;
  SurvivalConfig survival;
  double collision_area = 4.0;  // [m^2] turns the Gaussian overlap density into a probability
};

/// World-frame covariance of a vehicle `s` seconds ahead, heading `heading`.
/// Throws InvalidParameter for alpha <= 0 or s < 0.
Mat2 covariance_at(const UncertaintyConfig& cfg, double s, double alpha, double heading);

/// Overlap of N(mu1, S1) and N(mu2, S2) times the collision area:
///   A / sqrt(det(2 pi (S1 + S2))) * exp(-1/2 d^T (S1 + S2)^-1 d),  d = mu2 - mu1.
/// Throws NumericDegeneracy when S1 + S2 is not positive definite.
double collision_probability(const Vec2& mu1, const Vec2& mu2, const Mat2& s1, const Mat2& s2,
                             double collision_area);

/// exp(-s / tau).
double survival(double s, const SurvivalConfig& cfg);

/// Trapezoidal quadrature of p_coll(s) * survival(s) over the samples.
/// An empty profile integrates to 0.
double integrate_risk(std::span<const RiskProfileSample> profile, const SurvivalConfig& cfg);

/// Per-sample collision probabilities between two predictions on the same grid.
std::vector<RiskProfileSample> risk_profile(const Prediction& ego, const Prediction& other,
                                            const RiskModelConfig& cfg, double alpha);

/// Survival-weighted risk between the ego prediction and one other vehicle.
/// Throws InvalidInput when the sample grids differ.
double risk_between(const Prediction& ego, const Prediction& other, const RiskModelConfig& cfg,
                    double alpha);

/// Sum of risk_between over all other vehicles; 0 for an empty set.
double total_risk(const Prediction& ego, std::span<const Prediction> others,
                  const RiskModelConfig& cfg, double alpha);

/// W = w_alpha * R.
double warning_signal(double risk, const DriverProfile& profile);

}  // namespace riskwarn
