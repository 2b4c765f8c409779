#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "optent/covariance.hpp"
#include "optent/dynamics.hpp"
#include "optent/model.hpp"
#include "optent/spectra.hpp"

namespace optent::test {

// Independent oracle for the input-output relations: assemble the Langevin
// equations as a 6x6 linear system in the quadrature variables
// (A1, A2, B1 = x/s_x, B2 = p/s_p, v1, v2) with s_x = sqrt(hbar/(M w_m)),
// s_p = sqrt(hbar M w_m), and solve per input column. Kept deliberately
// separate from the closed-form path.
inline Eigen::Matrix<std::complex<double>, 6, 4> langevin_solve(double omega,
                                                                const SystemParams& p,
                                                                const NoiseModel& model) {
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);
  const double g = p.coupling, gamma = p.cavity_decay, m = p.mass, wm = p.mech_freq;
  const double s_x = std::sqrt(kHbar / (m * wm));
  const double s_p = std::sqrt(kHbar * m * wm);
  Eigen::Matrix<cd, 6, 6> a = Eigen::Matrix<cd, 6, 6>::Zero();
  Eigen::Matrix<cd, 6, 4> b = Eigen::Matrix<cd, 6, 4>::Zero();
  // rows: the six equations; cols of a: (A1, A2, B1, B2, v1, v2)
  a(0, 0) = -i * omega + gamma;                       // A1 eq
  b(0, 0) = std::sqrt(2.0 * gamma);
  a(1, 1) = -i * omega + gamma;                       // A2 eq
  a(1, 2) = -std::sqrt(2.0) * g * s_x;
  b(1, 1) = std::sqrt(2.0 * gamma);
  b(1, 2) = std::sqrt(2.0) * g;
  a(2, 2) = -i * omega;                               // x eq: -iW B1 = w_m B2
  a(2, 3) = -wm;
  if (model.is_structural()) {                        // p eq
    const double s = omega < 0 ? -1.0 : (omega > 0 ? 1.0 : 0.0);
    a(3, 3) = -i * omega;
    a(3, 2) = wm * (1.0 + i * s * loss_angle(omega, model.phi(), model.omega_c()));
  } else {
    a(3, 3) = -i * omega + p.mech_damping;
    a(3, 2) = wm;
  }
  a(3, 0) = -std::sqrt(2.0) * kHbar * g / s_p;
  b(3, 3) = 1.0 / s_p;
  a(4, 4) = 1.0;                                      // v1 eq
  a(4, 0) = std::sqrt(2.0 * gamma);
  b(4, 0) = 1.0;
  a(5, 5) = 1.0;                                      // v2 eq
  a(5, 1) = std::sqrt(2.0 * gamma);
  b(5, 1) = 1.0;

  Eigen::Matrix<cd, 6, 4> sol = a.fullPivLu().solve(b);
  // reorder to (B1, B2, A1, A2, v1, v2)
  Eigen::Matrix<cd, 6, 4> out;
  out.row(0) = sol.row(2);
  out.row(1) = sol.row(3);
  out.row(2) = sol.row(0);
  out.row(3) = sol.row(1);
  out.row(4) = sol.row(4);
  out.row(5) = sol.row(5);
  return out;
}

// Random physical n-mode covariance: thermal state conjugated by a random
// symplectic built from rotations and single-mode squeezers.
inline Eigen::MatrixXd random_gaussian_state(std::mt19937& rng, int n_modes,
                                             double max_squeeze = 1.0,
                                             double max_thermal = 2.0) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int d = 2 * n_modes;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < n_modes; ++k) {
    const double nu = 0.5 + max_thermal * uni(rng);
    v(2 * k, 2 * k) = nu;
    v(2 * k + 1, 2 * k + 1) = nu;
  }
  auto apply = [&](const Eigen::MatrixXd& s) { v = s * v * s.transpose(); };
  for (int pass = 0; pass < 2; ++pass) {
    for (int k = 0; k < n_modes; ++k) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
      const double r = max_squeeze * (2.0 * uni(rng) - 1.0);
      s(2 * k, 2 * k) = std::exp(r);
      s(2 * k + 1, 2 * k + 1) = std::exp(-r);
      apply(s);
      const double th = kTwoPi * uni(rng);
      Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(d, d);
      rot(2 * k, 2 * k) = std::cos(th);
      rot(2 * k, 2 * k + 1) = std::sin(th);
      rot(2 * k + 1, 2 * k) = -std::sin(th);
      rot(2 * k + 1, 2 * k + 1) = std::cos(th);
      apply(rot);
    }
    // two-mode mixing: beam-splitter on adjacent pairs
    for (int k = 0; k + 1 < n_modes; ++k) {
      const double th = kTwoPi * uni(rng);
      Eigen::MatrixXd bs = Eigen::MatrixXd::Identity(d, d);
      const double c = std::cos(th), s2 = std::sin(th);
      for (int q = 0; q < 2; ++q) {
        bs(2 * k + q, 2 * k + q) = c;
        bs(2 * k + q, 2 * (k + 1) + q) = s2;
        bs(2 * (k + 1) + q, 2 * k + q) = -s2;
        bs(2 * (k + 1) + q, 2 * (k + 1) + q) = c;
      }
      apply(bs);
    }
  }
  return 0.5 * (v + v.transpose());
}

// Wrap a small matrix as a CovarianceSet (first mode = mechanics).
inline CovarianceSet wrap(const Eigen::MatrixXd& v) {
  CovarianceSet set;
  set.v = v;
  set.grid.n_bins = static_cast<int>(v.rows()) / 2 - 1;
  set.grid.dt = 1.0;
  set.partition = Partition::AdiabaticNoCavity;
  return set;
}

}  // namespace optent::test
