#pragma once

#include <Eigen/Dense>
#include <string>

#include <json.hpp>

#include "optent/model.hpp"
#include "optent/spectra.hpp"

namespace optent {

/// Closed-form Gaussian reference states in the pipeline normalization
/// (vacuum variance 1/2 per quadrature, J blocks [[0,1],[-1,0]]).
struct AnalyticState {
  std::string label;
  Eigen::MatrixXd v;
};

AnalyticState vacuum_state(int n_modes);
AnalyticState thermal_state(double nbar);
/// Two-mode squeezed vacuum; after partial transpose the minimal normalized
/// symplectic eigenvalue is e^{-2r}.
AnalyticState tmsv_covariance(double r);

/// Steady-state (B1, B2, A1, A2) covariance for white classical noise from
/// the continuous Lyapunov equation A V + V A^T + D = 0, drift and diffusion
/// read off the Langevin system. The damping port carries its vacuum noise
/// floor so the noiseless limit is the mechanical ground state.
/// Throws std::runtime_error for an unstable drift.
Eigen::Matrix4d lyapunov_qq(const SystemParams& params, double omega_f, double omega_x);

/// Field self-test: analytic states through the entanglement engine, the
/// Lyapunov cross-check, spectra sanity. Returns per-check lines.
struct SelfCheckResult {
  bool passed = false;
  nlohmann::json checks;  // array of {name, pass, detail}
};
SelfCheckResult self_check();

}  // namespace optent
