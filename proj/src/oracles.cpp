#include "optent/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "optent/covariance.hpp"
#include "optent/entanglement.hpp"

namespace optent {

using nlohmann::json;

AnalyticState vacuum_state(int n_modes) {
  if (n_modes < 1) throw std::domain_error("vacuum_state: need at least one mode");
  return {"vacuum", 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)};
}

AnalyticState thermal_state(double nbar) {
  if (nbar < 0.0) throw std::domain_error("thermal_state: occupation must be >= 0");
  return {"thermal", (nbar + 0.5) * Eigen::MatrixXd::Identity(2, 2)};
}

AnalyticState tmsv_covariance(double r) {
  if (r < 0.0) throw std::domain_error("tmsv_covariance: r must be >= 0");
  const double c = std::cosh(2.0 * r), s = std::sinh(2.0 * r);
  Eigen::Matrix4d v;
  v << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return {"tmsv", 0.5 * v};
}

Eigen::Matrix4d lyapunov_qq(const SystemParams& params, double omega_f, double omega_x) {
  params.validate();
  if (omega_f < 0.0 || omega_x <= 0.0) throw std::domain_error("lyapunov_qq: bad noise scales");
  const double wm = params.mech_freq;
  const double gm = params.mech_damping;
  const double gamma = params.cavity_decay;
  const double g_coupling = params.coupling * std::sqrt(2.0 * kHbar / (params.mass * wm));

  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 1) = wm;
  a(1, 0) = -wm;
  a(1, 1) = -gm;
  a(1, 2) = g_coupling;
  a(2, 2) = -gamma;
  a(3, 0) = g_coupling;
  a(3, 3) = -gamma;

  Eigen::EigenSolver<Eigen::Matrix4d> es(a, false);
  if (es.eigenvalues().real().maxCoeff() >= 0.0)
    throw std::runtime_error("lyapunov_qq: unstable drift matrix");

  // White inputs: S_nF = 2 hbar M W_F^2 plus the vacuum floor 2 hbar M w_m g_m
  // of the damping port; S_nX = 2 hbar / (M W_X^2).
  const double s_nf = 2.0 * kHbar * params.mass * (omega_f * omega_f + wm * gm);
  const double s_nx = 2.0 * kHbar / (params.mass * omega_x * omega_x);
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  d(1, 1) = s_nf / (2.0 * kHbar * params.mass * wm);
  d(2, 2) = gamma;
  d(3, 3) = gamma + params.coupling * params.coupling * s_nx;

  // Vectorized solve of A V + V A^T = -D.
  Eigen::Matrix<double, 16, 16> k = Eigen::Matrix<double, 16, 16>::Zero();
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          // vec index (col-major): row p + 4 col q of V
          k(p + 4 * q, i + 4 * j) += a(p, i) * id(q, j) + id(p, i) * a(q, j);
  Eigen::Matrix<double, 16, 1> rhs;
  for (int q = 0; q < 4; ++q)
    for (int p = 0; p < 4; ++p) rhs(p + 4 * q) = -d(p, q);
  Eigen::Matrix<double, 16, 1> vvec = k.fullPivLu().solve(rhs);
  Eigen::Matrix4d v;
  for (int q = 0; q < 4; ++q)
    for (int p = 0; p < 4; ++p) v(p, q) = vvec(p + 4 * q);
  return 0.5 * (v + v.transpose());
}

namespace {

CovarianceSet wrap_state(const AnalyticState& st) {
  // Present a small analytic state as a CovarianceSet: all modes beyond the
  // first two masquerade as field bins.
  CovarianceSet set;
  const int n_modes = static_cast<int>(st.v.rows()) / 2;
  set.grid.n_bins = std::max(1, n_modes - 1);
  set.grid.dt = 1.0;
  set.partition = Partition::AdiabaticNoCavity;
  set.v = st.v;
  return set;
}

}  // namespace

SelfCheckResult self_check() {
  SelfCheckResult result;
  result.checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    result.checks.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
    all = all && pass;
  };

  // Vacuum through the full pipeline on a small grid.
  try {
    SystemParams p = SystemParams::aligo();
    p.coupling = 0.0;
    p.mech_damping = 0.0;
    TimeGrid grid{50, 0.5e-3};
    CovarianceSet set = build_covariance(p, NoiseModel::none(), Partition::WithCavity, grid);
    EntanglementReport rep = analyze(set);
    const bool pass = std::abs(rep.lambda_b) < 1e-8 && std::abs(rep.lambda_n) < 1e-8 &&
                      std::abs(rep.nu_min - 1.0) < 1e-6 && rep.e_n == 0.0;
    record("vacuum_identity", pass,
           "lambda_b=" + std::to_string(rep.lambda_b) + " nu_min=" + std::to_string(rep.nu_min));
  } catch (const std::exception& e) {
    record("vacuum_identity", false, e.what());
  }

  // TMSV negativity against the closed form.
  try {
    const double r = 0.7;
    CovarianceSet set = wrap_state(tmsv_covariance(r));
    SymplecticSpectrum s = symplectic_spectrum(set, true);
    const double expect = 2.0 * r / std::log(2.0);
    const bool pass = std::abs(log_negativity(s.nu) - expect) < 1e-9;
    record("tmsv_negativity", pass, "E_N=" + std::to_string(log_negativity(s.nu)));
  } catch (const std::exception& e) {
    record("tmsv_negativity", false, e.what());
  }

  // Lyapunov vs frequency-domain Q-block.
  try {
    SystemParams p = SystemParams::aligo();
    const double wf = kTwoPi * 100.0, wx = kTwoPi * 300.0;
    NoiseModel white = NoiseModel::white(p.mass, wf, wx);
    Eigen::Matrix4d ref = lyapunov_qq(p, wf, wx);
    TimeGrid grid{8, 1e-3};
    Eigen::MatrixXd qq =
        build_v_qq(p, white, IntegratorSettings{}, ModelKind::Full, grid);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double scale = std::max({std::abs(ref(i, j)), 1e-9 * ref.diagonal().maxCoeff()});
        worst = std::max(worst, std::abs(qq(i, j) - ref(i, j)) / scale);
      }
    record("lyapunov_cross_check", worst < 0.01, "worst rel dev=" + std::to_string(worst));
  } catch (const std::exception& e) {
    record("lyapunov_cross_check", false, e.what());
  }

  // Spectra evenness and nonnegativity spot checks.
  try {
    bool pass = true;
    NoiseModel models[] = {NoiseModel::aligo_baseline(),
                           NoiseModel::structural(1.0, kTwoPi * 100, kTwoPi * 260, 0.05,
                                                  kTwoPi * 0.05),
                           NoiseModel::suspension_only()};
    for (const auto& m : models)
      for (double w : {0.1, 3.7, 88.0, 5413.0}) {
        pass = pass && m.force_spectrum(w) == m.force_spectrum(-w) && m.force_spectrum(w) >= 0.0;
        pass = pass && m.sensing_spectrum(w) == m.sensing_spectrum(-w) &&
               m.sensing_spectrum(w) >= 0.0;
      }
    record("spectra_sanity", pass, "evenness and nonnegativity");
  } catch (const std::exception& e) {
    record("spectra_sanity", false, e.what());
  }

  result.passed = all;
  return result;
}

}  // namespace optent
