#pragma once

#include <Eigen/Dense>
#include <complex>

#include "optent/model.hpp"
#include "optent/spectra.hpp"

namespace optent {

enum class ModelKind { Full, Adiabatic };

/// Frequency response from the inputs (u1, u2, nX, nF) to the system outputs.
/// Rows are (B1, B2, A1, A2, v1, v2) for the full model and (B1, B2, v1, v2)
/// for the adiabatic one. Satisfies T(-W) = conj(T(W)); the structural loss
/// angle enters with odd parity to keep that reality condition.
struct TransferMatrix {
  double omega = 0.0;
  ModelKind kind = ModelKind::Full;
  Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 4> t;

  int rows() const { return static_cast<int>(t.rows()); }
  int n_q() const { return rows() - 2; }  // quadratures kept at t = 0
  int iv1() const { return rows() - 2; }
  int iv2() const { return rows() - 1; }
};

/// Mechanical susceptibility: viscous by default, complex-spring form with
/// odd-parity loss angle when the noise model is structural (velocity damping
/// removed). Throws std::domain_error at an undamped real pole.
std::complex<double> mechanical_susceptibility(double omega, const SystemParams& params,
                                               const NoiseModel& model);

/// Exact solution of the Langevin system for the driven cavity.
TransferMatrix transfer_full(double omega, const SystemParams& params, const NoiseModel& model);

/// Large-cavity-bandwidth limit: v1 = u1, v2 = u2 + alpha (x + nX).
TransferMatrix transfer_adiabatic(double omega, const SystemParams& params,
                                  const NoiseModel& model);

/// One-sided symmetrized cross-spectra of the outputs,
/// S_ij = sum_k T_ik S_k conj(T_jk) with S_k = (1, 1, S_nX, S_nF).
Eigen::MatrixXcd output_cross_spectrum(const TransferMatrix& t, const NoiseModel& model);

}  // namespace optent
