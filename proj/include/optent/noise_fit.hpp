#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "optent/spectra.hpp"

namespace optent {

/// Which spectral family and channel to fit; fields not listed as free stay
/// at their template values.
struct NoiseFitTemplate {
  enum class Kind {
    LigoForce,         // free: tau_f, omega_f
    LigoSensing,       // free: tau_x1, tau_x2 (omega_x fixed: only the ratio is identifiable)
    SuspensionOnly,    // free: tau_st, omega_st
    WhiteForce,        // free: omega_f
    WhiteSensing,      // free: omega_x
    StructuralForce,   // free: omega_f (phi, omega_c fixed)
    StructuralSensing  // free: omega_x
  };
  Kind kind = Kind::LigoForce;
  double mass = 1.0;                  // white/structural families
  double phi = 0.05;                  // structural
  double omega_c = kTwoPi * 0.05;     // structural
  double omega_x = kTwoPi * 1e4;      // fixed sensing cutoff for LigoSensing

  static NoiseFitTemplate from_name(const std::string& name);
  std::string name() const;
};

struct NoiseFitResult {
  std::vector<std::string> names;  // fitted parameter names
  std::vector<double> values;      // linear scale
  double residual_rms = 0.0;       // rms log10 residual on the resampled grid
  int iterations = 0;
  bool converged = false;
  /// Parameters as a JSON document keyed by the published field names.
  nlohmann::json to_json() const;
};

/// Least-squares fit of log10(PSD) over log10(f), log-uniformly resampled.
/// Levenberg-damped Gauss-Newton, max 500 iterations, gradient tol 1e-10.
/// Throws FitError (carrying best-so-far) on non-convergence, and
/// std::domain_error on an empty or degenerate sample table.
NoiseFitResult fit_noise_model(const std::vector<double>& freq_hz, const std::vector<double>& psd,
                               const NoiseFitTemplate& tmpl);

}  // namespace optent
