#include "optent/math_special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace optent::math {
namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Si and Ci by power series for small x and the auxiliary-function
// continued-fraction expansion for large x (complex Lentz iteration on
// the exponential integral E1(ix)).
void si_ci(double x, double& si, double& ci) {
  if (x <= 0.0) throw std::domain_error("si_ci: requires x > 0");
  if (x <= 4.0) {
    // Series: Si(x) = sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!),
    //         Cin(x) = sum_k (-1)^(k+1) x^(2k) / (2k (2k)!), Ci = gamma + ln x - Cin.
    const double x2 = x * x;
    double t = x;  // (-1)^k x^(2k+1) / (2k+1)!
    double sum_si = x;
    for (int k = 1; k < 48; ++k) {
      t *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum_si += t / (2.0 * k + 1.0);
      if (std::abs(t) < 1e-18 * std::abs(sum_si)) break;
    }
    si = sum_si;
    double u = 1.0;  // starts one step before (-1)^(k+1) x^(2k) / (2k)!
    double cin = 0.0;
    for (int k = 1; k < 48; ++k) {
      u *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
      cin -= u / (2.0 * k);  // cin accumulates +Cin(x)
      if (std::abs(u) < 1e-18) break;
    }
    ci = kEulerGamma + std::log(x) - cin;
    return;
  }
  // Lentz continued fraction for E1(ix); then
  // Ci(x) = -Re E1(ix), Si(x) = pi/2 + Im E1(ix).
  std::complex<double> z(0.0, x);
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / std::numeric_limits<double>::min();
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 200; ++i) {
    double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  std::complex<double> e1 = std::exp(-z) * h;
  ci = -e1.real();
  si = 0.5 * 3.14159265358979323846 + e1.imag();
}

}  // namespace

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  double si, ci;
  si_ci(std::abs(x), si, ci);
  return x > 0 ? si : -si;
}

double cosine_integral(double x) {
  double si, ci;
  si_ci(x, si, ci);
  return ci;
}

double truncated_cos_over_linear(double a, double b, double X) {
  if (a <= 0.0 || X <= 0.0) throw std::domain_error("truncated_cos_over_linear: a, X > 0");
  if (b == 0.0) return std::log((X + a) / a);
  // substite t = b (w + a):
  //   int = cos(ab) [Ci(b(X+a)) - Ci(ab)] + sin(ab) [Si(b(X+a)) - Si(ab)]
  double ab = b * a;
  double aX = b * (X + a);
  return std::cos(ab) * (cosine_integral(aX) - cosine_integral(ab)) +
         std::sin(ab) * (sine_integral(aX) - sine_integral(ab));
}

const std::array<double, 7>& GaussLegendre7::nodes() {
  static const std::array<double, 7> x = {
      -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
      0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
  return x;
}

const std::array<double, 7>& GaussLegendre7::weights() {
  static const std::array<double, 7> w = {
      0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
      0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
  return w;
}

}  // namespace optent::math
