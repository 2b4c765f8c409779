#pragma once

#include <array>
#include <cstddef>

namespace optent::math {

/// Sine integral Si(x) = int_0^x sin t / t dt.
double sine_integral(double x);

/// Cosine integral Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt, x > 0.
double cosine_integral(double x);

/// int_0^X cos(b w) / (w + a) dw for a > 0, b >= 0, X > a-scale.
double truncated_cos_over_linear(double a, double b, double X);

/// 7-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre7 {
  static constexpr std::size_t n = 7;
  static const std::array<double, 7>& nodes();
  static const std::array<double, 7>& weights();
};

}  // namespace optent::math
