#pragma once

#include <stdexcept>
#include <string>

namespace riskwarn {

// A configuration value is outside its allowed domain (alpha <= 0, sigma <= 0, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input data: unknown names, mismatched grids, empty sets.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Numerically singular configuration, e.g. a non-invertible covariance sum.
class NumericDegeneracy : public std::runtime_error {
 public:
  explicit NumericDegeneracy(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riskwarn
