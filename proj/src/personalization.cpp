#include "riskwarn/personalization.hpp"

#include "riskwarn/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace riskwarn {

namespace {

// Keys follow the usual symbol names where one exists.
#define RISKWARN_PARAMETER_FIELDS(X) \
  X(v_off)                           \
  X(a_intent)                        \
  X(t_intent)                        \
  X(alpha_def)                       \
  X(alpha_norm)                      \
  X(alpha_conf)                      \
  X(w_def)                           \
  X(w_norm)                          \
  X(w_conf)                          \
  X(s_max)                           \
  X(collision_area)                  \
  X(sigma0_long)                     \
  X(sigma0_lat)                      \
  X(sigma_max_long)                  \
  X(sigma_max_lat)                   \
  X(tau)                             \
  X(prediction_dt)                   \
  X(velocity_samples)                \
  X(k_r)                             \
  X(k_u)                             \
  X(k_o)                             \
  X(v_ref)                           \
  X(a_ramp)                          \
  X(sim_dt)                          \
  X(warning_threshold)               \
  X(critical_timegap)                \
  X(reaction_margin)

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

}  // namespace

std::string_view to_string(DriverType type) {
  switch (type) {
    case DriverType::kDefensive:
      return "defensive";
    case DriverType::kNormal:
      return "normal";
    case DriverType::kConfident:
      return "confident";
  }
  return "unknown";
}

DriverType parse_driver_type(std::string_view name) {
  for (DriverType t : kAllDriverTypes) {
    if (to_string(t) == name) return t;
  }
  throw InvalidInput("unknown driver type '" + std::string(name) + "'");
}

void ModelParameters::validate() const {
#define X(name) require(std::isfinite(static_cast<double>(name)), #name " must be finite");
  RISKWARN_PARAMETER_FIELDS(X)
#undef X
  require(s_max > 0.0, "s_max must be > 0");
  require(alpha_def > 0.0 && alpha_norm > 0.0 && alpha_conf > 0.0, "risk factors must be > 0");
  require(w_def > 0.0 && w_norm > 0.0 && w_conf > 0.0, "risk weights must be > 0");
  require(t_intent > 0.0, "t_intent must be > 0");
  require(collision_area > 0.0, "collision_area must be > 0");
  require(tau > 0.0, "tau must be > 0");
  require(prediction_dt > 0.0 && prediction_dt <= s_max, "prediction_dt must be in (0, s_max]");
  require(velocity_samples >= 2, "velocity_samples must be >= 2");
  require(v_ref > 0.0, "v_ref must be > 0");
  require(a_ramp > 0.0, "a_ramp must be > 0");
  require(sim_dt > 0.0, "sim_dt must be > 0");
  require(warning_threshold > 0.0, "warning_threshold must be > 0");
  require(critical_timegap > 0.0, "critical_timegap must be > 0");
  require(reaction_margin >= 0.0, "reaction_margin must be >= 0");
  uncertainty().validate();
}

UncertaintyConfig ModelParameters::uncertainty() const {
  return {sigma0_long, sigma0_lat, sigma_max_long, sigma_max_lat, s_max};
}

SurvivalConfig ModelParameters::survival() const { return {tau, s_max}; }

RiskModelConfig ModelParameters::risk_model() const {
  RiskModelConfig cfg;
  cfg.ego_uncertainty = uncertainty();
  cfg.other_uncertainty = uncertainty();
  cfg.survival = survival();
  cfg.collision_area = collision_area;
  return cfg;
}

DriverProfile profile_for(DriverType type, const ModelParameters& params) {
  switch (type) {
    case DriverType::kDefensive:
      return {type, params.alpha_def, params.w_def};
    case DriverType::kNormal:
      return {type, params.alpha_norm, params.w_norm};
    case DriverType::kConfident:
      return {type, params.alpha_conf, params.w_conf};
  }
  throw InvalidInput("unknown driver type");
}

DriverProfile baseline_profile(const ModelParameters& params) {
  return {DriverType::kNormal, params.alpha_norm, params.w_norm};
}

double interpolated_risk_weight(double alpha, const ModelParameters& params) {
  if (!(alpha > 0.0)) throw InvalidParameter("risk factor alpha must be > 0");
  const double slope = (params.w_def - params.w_conf) / (params.alpha_def - params.alpha_conf);
  return params.w_conf + slope * (alpha - params.alpha_conf);
}

std::string parameters_to_json(const ModelParameters& params) {
  nlohmann::ordered_json j;
#define X(name) j[#name] = params.name;
  RISKWARN_PARAMETER_FIELDS(X)
#undef X
  return j.dump(2) + "\n";
}

ModelParameters parameters_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("parameter file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("parameter file must hold a JSON object");
  ModelParameters p;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
#define X(name)                                                               \
  if (key == #name) {                                                         \
    if (!value.is_number()) throw InvalidInput("parameter '" #name "' must be a number"); \
    p.name = value.get<decltype(p.name)>();                                   \
    known = true;                                                             \
  }
    RISKWARN_PARAMETER_FIELDS(X)
#undef X
    if (!known) throw InvalidInput("unknown parameter '" + key + "'");
  }
  p.validate();
  return p;
}

ModelParameters load_parameters(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidInput("cannot open parameter file " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parameters_from_json(buf.str());
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(file.string() + ": " + e.what());
  }
}

void save_parameters(const ModelParameters& params, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write parameter file " + file.string());
  out << parameters_to_json(params);
}

}  // namespace riskwarn
