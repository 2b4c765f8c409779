#include "optent/freq_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optent/errors.hpp"
#include "optent/math_special.hpp"

namespace optent {

namespace {
constexpr double kOscRadiansPerPanel = 2.5;
constexpr std::size_t kMaxPanels = 4'000'000;
}  // namespace

FrequencyGrid build_frequency_grid(double omega_max, double tau_max,
                                   const std::vector<SpectralFeature>& features,
                                   double low_scale, double refine) {
  if (omega_max <= 0.0) throw std::domain_error("build_frequency_grid: omega_max must be > 0");
  if (refine <= 0.0 || refine > 1.0)
    throw std::domain_error("build_frequency_grid: refine in (0, 1]");
  if (low_scale <= 0.0) low_scale = omega_max * 1e-9;

  const double osc_cap = tau_max > 0.0 ? kOscRadiansPerPanel / tau_max : omega_max;

  auto allowed = [&](double w) {
    double h = std::min(osc_cap, (w + low_scale) / 8.0);
    for (const auto& f : features) {
      const double fw = std::max(f.width, f.center * 1e-12 + 1e-300);
      h = std::min(h, std::abs(w - f.center) / 8.0 + 0.5 * fw);
    }
    return h * refine;
  };

  FrequencyGrid g;
  g.omega_max = omega_max;
  const auto& xn = math::GaussLegendre7::nodes();
  const auto& wn = math::GaussLegendre7::weights();

  double lo = 0.0;
  std::size_t panels = 0;
  while (lo < omega_max) {
    double h = allowed(lo);
    h = allowed(lo + 0.5 * h);  // re-evaluate at the tentative panel midpoint
    h = std::min(h, omega_max - lo);
    if (h <= 0.0 || !(h > lo * 1e-15))
      throw IntegrationError("build_frequency_grid: vanishing panel width");
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    for (std::size_t i = 0; i < math::GaussLegendre7::n; ++i) {
      g.omega.push_back(mid + half * xn[i]);
      g.weight.push_back(half * wn[i]);
    }
    lo += h;
    if (++panels > kMaxPanels)
      throw IntegrationError("build_frequency_grid: panel budget exceeded");
  }
  return g;
}

}  // namespace optent
