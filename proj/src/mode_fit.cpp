#include "optent/mode_fit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "optent/constants.hpp"

namespace optent {

namespace {

struct Projection {
  double sse = std::numeric_limits<double>::infinity();
  std::vector<double> a, b;  // per-curve sin/cos coefficients
};

// For fixed (w, g), solve the per-curve linear subproblem in the basis
// e^{-g|t|} sin(w t), e^{-g|t|} cos(w t).
Projection project(double omega, double gamma, const std::vector<double>& times,
                   const std::vector<Eigen::VectorXd>& curves) {
  const int n = static_cast<int>(times.size());
  Eigen::VectorXd f1(n), f2(n);
  for (int i = 0; i < n; ++i) {
    const double env = std::exp(-gamma * std::abs(times[i]));
    f1(i) = env * std::sin(omega * times[i]);
    f2(i) = env * std::cos(omega * times[i]);
  }
  const double g11 = f1.squaredNorm(), g22 = f2.squaredNorm(), g12 = f1.dot(f2);
  const double det = g11 * g22 - g12 * g12;
  Projection out;
  out.sse = 0.0;
  for (const auto& y : curves) {
    const double r1 = f1.dot(y), r2 = f2.dot(y);
    double a = 0.0, b = 0.0;
    if (det > 1e-300 * std::max(g11 * g22, 1e-300)) {
      a = (g22 * r1 - g12 * r2) / det;
      b = (g11 * r2 - g12 * r1) / det;
    }
    out.a.push_back(a);
    out.b.push_back(b);
    out.sse += y.squaredNorm() - (a * r1 + b * r2);
  }
  if (!std::isfinite(out.sse)) out.sse = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

Eigen::VectorXd real_curve(const Eigen::VectorXcd& z) { return z.real(); }
Eigen::VectorXd imag_curve(const Eigen::VectorXcd& z) { return z.imag(); }

ModeFit fit_decaying_sinusoid(const std::vector<double>& times,
                              const std::vector<Eigen::VectorXd>& curves) {
  ModeFit fit;
  const int n = static_cast<int>(times.size());
  if (n < 8 || curves.empty()) return fit;
  double total_power = 0.0;
  for (const auto& y : curves) total_power += y.squaredNorm();
  if (total_power <= 0.0) return fit;

  const double span = std::abs(times.front() - times.back()) +
                      std::abs(times[1] - times[0]);
  const double dw = kTwoPi / span;

  // Initial frequency from the Fourier peak of the complex pair forming the
  // last two curves (the v2 trace when called from extract_mode).
  const Eigen::VectorXd& yr = curves.size() >= 4 ? curves[2] : curves[0];
  const Eigen::VectorXd& yi = curves.size() >= 4 ? curves[3] : curves[curves.size() - 1];
  double w0 = dw;
  double best_mag = -1.0;
  for (int k = 1; k <= n / 2; ++k) {
    const double w = k * dw;
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      acc += std::complex<double>(yr(i), yi(i)) * std::polar(1.0, w * times[i]);
    const double mag = std::abs(acc);
    if (mag > best_mag) {
      best_mag = mag;
      w0 = w;
    }
  }

  // Coarse grid around the peak, then damped Gauss-Newton on (w, ln g).
  double best_w = w0, best_g = dw;
  Projection best = project(best_w, best_g, times, curves);
  for (double fw = -1.0; fw <= 1.0; fw += 0.5)
    for (double fg : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double w = std::max(0.25 * dw, w0 + fw * dw);
      const double g = fg * dw;
      Projection p = project(w, g, times, curves);
      if (p.sse < best.sse) {
        best = p;
        best_w = w;
        best_g = g;
      }
    }

  double lambda = 1e-3;
  bool converged = false;
  for (int iter = 0; iter < 500; ++iter) {
    const double hw = 1e-6 * std::max(best_w, dw);
    const double hu = 1e-6;
    const double s0 = best.sse;
    const double sw_p = project(best_w + hw, best_g, times, curves).sse;
    const double sw_m = project(best_w - hw, best_g, times, curves).sse;
    const double su_p = project(best_w, best_g * std::exp(hu), times, curves).sse;
    const double su_m = project(best_w, best_g * std::exp(-hu), times, curves).sse;
    const double gw = (sw_p - sw_m) / (2.0 * hw);
    const double gu = (su_p - su_m) / (2.0 * hu);
    const double hww = (sw_p - 2.0 * s0 + sw_m) / (hw * hw);
    const double huu = (su_p - 2.0 * s0 + su_m) / (hu * hu);
    const double grad_scale = std::abs(gw) * std::max(best_w, dw) + std::abs(gu);
    if (grad_scale < 1e-10 * std::max(s0, 1e-300)) {
      converged = true;
      break;
    }
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      const double dwstep = -gw / (std::max(hww, 0.0) + lambda * std::max(hww, s0 / (dw * dw)));
      const double dustep = -gu / (std::max(huu, 0.0) + lambda * std::max(huu, s0));
      const double w_new = std::max(0.1 * dw, best_w + dwstep);
      const double g_new = best_g * std::exp(std::clamp(dustep, -1.0, 1.0));
      Projection p = project(w_new, g_new, times, curves);
      if (p.sse < s0 * (1.0 - 1e-14)) {
        best = p;
        best_w = w_new;
        best_g = g_new;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
      } else {
        lambda *= 8.0;
      }
    }
    if (!improved) {
      converged = std::isfinite(best.sse);
      break;
    }
  }

  fit.omega_star = best_w;
  fit.gamma_star = best_g;
  fit.converged = converged && std::isfinite(best.sse);
  fit.r_squared = 1.0 - best.sse / total_power;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    fit.amplitude.push_back(std::hypot(best.a[c], best.b[c]));
    fit.phase.push_back(std::atan2(best.b[c], best.a[c]));
  }
  return fit;
}

}  // namespace optent
