#pragma once

#include "riskwarn/risk.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace riskwarn {

enum class DriverType { kDefensive, kNormal, kConfident };

inline constexpr DriverType kAllDriverTypes[] = {DriverType::kDefensive, DriverType::kNormal,
                                                 DriverType::kConfident};

std::string_view to_string(DriverType type);
/// Throws InvalidInput for names other than defensive / normal / confident.
DriverType parse_driver_type(std::string_view name);

struct DriverProfile {
  DriverType type = DriverType::kNormal;
  double alpha = 0.5;   // risk factor
  double weight = 1.0;  // risk weight w_alpha

  bool operator==(const DriverProfile&) const = default;
};

/// Every tunable of the risk model, planner and harness.
struct ModelParameters {
  // Perception (driver errors).
  double v_off = -4.0;     // [m/s] forecast velocity offset
  double a_intent = -1.5;  // [m/s^2] wrongly inferred acceleration
  double t_intent = 3.0;   // [s] duration of the inferred acceleration

  // Personalization.
  double alpha_def = 1.0;
  double alpha_norm = 0.5;
  double alpha_conf = 0.04;
  double w_def = 10.0;
  double w_norm = 1.0;
  double w_conf = 0.1;

  double s_max = 8.0;  // [s] prediction horizon

  // Risk kernel.
  double collision_area = 4.0;  // [m^2]
  double sigma0_long = 0.5;     // [m]
  double sigma0_lat = 0.5;      // [m]
  double sigma_max_long = 6.0;  // [m]
  double sigma_max_lat = 1.5;   // [m]
  double tau = 4.0;             // [s]
  double prediction_dt = 0.2;   // [s]

  // Planner.
  int velocity_samples = 21;
  double k_r = 30.0;
  double k_u = 0.15;
  double k_o = 0.05;
  double v_ref = 10.0;   // [m/s] comfort normalization speed
  double a_ramp = 2.0;   // [m/s^2]

  // Harness.
  double sim_dt = 0.1;                // [s]
  double warning_threshold = 0.08912509381337455;  // theta = 10^-1.05, see `riskwarn calibrate`
  double critical_timegap = 1.0;      // [s]
  double reaction_margin = 0.5;       // [s]

  /// Throws InvalidParameter on non-finite or out-of-domain values.
  void validate() const;

  UncertaintyConfig uncertainty() const;
  SurvivalConfig survival() const;
  RiskModelConfig risk_model() const;

  bool operator==(const ModelParameters&) const = default;
};

/// Table values per driver type.
DriverProfile profile_for(DriverType type, const ModelParameters& params = {});

/// The baseline model uses the normal-driver parametrization.
DriverProfile baseline_profile(const ModelParameters& params = {});

/// Risk weight for an arbitrary alpha, linear through the defensive and
/// confident calibration points. Tabulated types use profile_for instead.
double interpolated_risk_weight(double alpha, const ModelParameters& params = {});

std::string parameters_to_json(const ModelParameters& params);
/// Keys missing from the text keep their default; unknown keys are rejected.
ModelParameters parameters_from_json(std::string_view text);

ModelParameters load_parameters(const std::filesystem::path& file);
void save_parameters(const ModelParameters& params, const std::filesystem::path& file);

}  // namespace riskwarn
