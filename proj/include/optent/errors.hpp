#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optent {

/// Frequency integral failed to converge or its tail model could not be
/// validated at the cutoff.
class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

/// Least-squares fit did not converge; carries the best parameters seen.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, std::vector<double> best, double residual)
      : std::runtime_error(what), best_params(std::move(best)), best_residual(residual) {}
  std::vector<double> best_params;
  double best_residual = 0.0;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace optent
