#pragma once

#include <Eigen/Dense>
#include <vector>

namespace optent {

/// Shared-(w*, g*) decaying-sinusoid fit A_c e^{-g|t|} sin(w t + theta_c)
/// across several real curves, free amplitude and phase per curve.
struct ModeFit {
  double omega_star = 0.0;
  double gamma_star = 0.0;
  std::vector<double> amplitude;
  std::vector<double> phase;
  double r_squared = 0.0;
  bool converged = false;
};

Eigen::VectorXd real_curve(const Eigen::VectorXcd& z);
Eigen::VectorXd imag_curve(const Eigen::VectorXcd& z);

/// Variable-projection fit: the (w, g) pair is optimized by damped
/// Gauss-Newton, per-curve amplitudes by linear solves. Initialized from the
/// discrete Fourier peak of curves[2] + i curves[3]. Never throws; a
/// diverging fit comes back with converged = false and the best point seen.
ModeFit fit_decaying_sinusoid(const std::vector<double>& times,
                              const std::vector<Eigen::VectorXd>& curves);

}  // namespace optent
