#pragma once

#include <vector>

namespace optent {

/// A narrow spectral structure the quadrature must resolve (resonance peak,
/// roll-off knee): panels shrink to ~width/2 at the center and relax
/// geometrically away from it.
struct SpectralFeature {
  double center = 0.0;
  double width = 0.0;
};

/// Positive-frequency quadrature nodes and weights on (0, omega_max]:
/// composite 7-point Gauss-Legendre panels. Panel widths are capped by
///   - the oscillation scale ~2.5/tau_max of the slowest lag kernel,
///   - a power-law rule (omega + low_scale)/8 resolving steep spectra,
///   - |omega - center|/8 + width/2 around each feature.
struct FrequencyGrid {
  std::vector<double> omega;
  std::vector<double> weight;
  double omega_max = 0.0;
  std::size_t size() const { return omega.size(); }
};

FrequencyGrid build_frequency_grid(double omega_max, double tau_max,
                                   const std::vector<SpectralFeature>& features,
                                   double low_scale, double refine = 1.0);

}  // namespace optent
