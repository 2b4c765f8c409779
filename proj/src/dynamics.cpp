#include "optent/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace optent {

using cd = std::complex<double>;
namespace {
constexpr cd kI{0.0, 1.0};

double sign(double x) { return x < 0.0 ? -1.0 : (x > 0.0 ? 1.0 : 0.0); }

}  // namespace

std::complex<double> mechanical_susceptibility(double omega, const SystemParams& params,
                                               const NoiseModel& model) {
  const double m = params.mass;
  const double wm = params.mech_freq;
  cd denom;
  if (model.is_structural()) {
    const double phi_w = loss_angle(omega, model.phi(), model.omega_c()) * sign(omega);
    denom = m * (wm * wm * (1.0 + kI * phi_w) - omega * omega);
  } else {
    denom = m * (wm * wm - omega * omega) - kI * m * params.mech_damping * omega;
  }
  if (denom == cd(0.0, 0.0))
    throw std::domain_error("mechanical_susceptibility: undamped resonance pole");
  return 1.0 / denom;
}

TransferMatrix transfer_full(double omega, const SystemParams& params, const NoiseModel& model) {
  const double g = params.coupling;
  const double gamma = params.cavity_decay;
  const cd cav = 1.0 / (gamma - kI * omega);       // cavity pole
  const cd refl = (-gamma - kI * omega) * cav;     // |refl| = 1
  const double root2g = std::sqrt(2.0 * gamma);
  const cd chi = mechanical_susceptibility(omega, params, model);

  // x response: x = chi (sqrt2 hbar G A1 + nF), A1 = sqrt(2 gamma) u1 / (gamma - i W)
  Eigen::Matrix<cd, 1, 4> x_row = Eigen::Matrix<cd, 1, 4>::Zero();
  x_row(0) = chi * 2.0 * kHbar * g * std::sqrt(gamma) * cav;
  x_row(3) = chi;

  const double b1_scale = std::sqrt(params.mass * params.mech_freq / kHbar);
  const cd b2_scale = -kI * omega * std::sqrt(params.mass / (kHbar * params.mech_freq));

  TransferMatrix out;
  out.omega = omega;
  out.kind = ModelKind::Full;
  out.t.setZero(6, 4);
  out.t.row(0) = b1_scale * x_row;
  out.t.row(1) = b2_scale * x_row;
  // A1
  out.t(2, 0) = root2g * cav;
  // A2 = [sqrt(2 gamma) u2 + sqrt2 G (x + nX)] / (gamma - i W)
  out.t.row(3) = std::sqrt(2.0) * g * cav * x_row;
  out.t(3, 1) += root2g * cav;
  out.t(3, 2) += std::sqrt(2.0) * g * cav;
  // v = u - sqrt(2 gamma) A
  out.t(4, 0) = refl;
  out.t.row(5) = -root2g * out.t.row(3);
  out.t(5, 1) += 1.0;
  return out;
}

TransferMatrix transfer_adiabatic(double omega, const SystemParams& params,
                                  const NoiseModel& model) {
  const double alpha = params.alpha();
  const cd chi = mechanical_susceptibility(omega, params, model);

  Eigen::Matrix<cd, 1, 4> x_row = Eigen::Matrix<cd, 1, 4>::Zero();
  x_row(0) = chi * kHbar * alpha;
  x_row(3) = chi;

  const double b1_scale = std::sqrt(params.mass * params.mech_freq / kHbar);
  const cd b2_scale = -kI * omega * std::sqrt(params.mass / (kHbar * params.mech_freq));

  TransferMatrix out;
  out.omega = omega;
  out.kind = ModelKind::Adiabatic;
  out.t.setZero(4, 4);
  out.t.row(0) = b1_scale * x_row;
  out.t.row(1) = b2_scale * x_row;
  out.t(2, 0) = 1.0;  // v1 = u1
  out.t.row(3) = alpha * x_row;
  out.t(3, 1) += 1.0;
  out.t(3, 2) += alpha;
  return out;
}

Eigen::MatrixXcd output_cross_spectrum(const TransferMatrix& t, const NoiseModel& model) {
  Eigen::Vector4d s_in(1.0, 1.0, model.sensing_spectrum(t.omega), model.force_spectrum(t.omega));
  Eigen::MatrixXcd s = t.t * s_in.asDiagonal() * t.t.adjoint();
  return 0.5 * (s + s.adjoint().eval());
}

}  // namespace optent
