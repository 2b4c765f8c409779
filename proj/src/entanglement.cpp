#include "optent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "optent/mode_fit.hpp"

namespace optent {

using cd = std::complex<double>;
using nlohmann::json;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Entangled: return "entangled";
    case Verdict::Separable: return "separable";
    case Verdict::Undecidable: return "undecidable";
  }
  return "?";
}

double epsilon_num(const CovarianceSet& set) {
  const double norm_inf = set.v.cwiseAbs().rowwise().sum().maxCoeff();
  return 1e-9 * std::max(1.0, norm_inf);
}

namespace {

Eigen::MatrixXcd heisenberg_matrix(const CovarianceSet& set) {
  const int n = set.dim();
  Eigen::MatrixXcd h = set.v.cast<cd>();
  // V + iJ/2 with J block-diagonal over (x, p)-type pairs
  for (int k = 0; k < n; k += 2) {
    h(k, k + 1) += cd(0.0, 0.5);
    h(k + 1, k) -= cd(0.0, 0.5);
  }
  return h;
}

double min_eig_hermitian(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_eig_hermitian: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace

double physicality_lambda(const CovarianceSet& set) {
  return min_eig_hermitian(heisenberg_matrix(set));
}

double ppt_lambda(const CovarianceSet& set) {
  return min_eig_hermitian(heisenberg_matrix(partial_transpose(set)));
}

SymplecticSpectrum symplectic_spectrum(const CovarianceSet& set, bool transposed) {
  const CovarianceSet* src = &set;
  CovarianceSet pt;
  if (transposed) {
    pt = partial_transpose(set);
    src = &pt;
  }
  const Eigen::MatrixXd& v = src->v;
  const int n = set.dim();

  SymplecticSpectrum out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ev(v);
  if (ev.info() != Eigen::Success)
    throw std::runtime_error("symplectic_spectrum: eigensolver failed on V");

  if (ev.eigenvalues().minCoeff() > 0.0) {
    // Hermitian similarity: eigenvalues of V^1/2 (iJ) V^1/2 come in +/- nu/2 pairs.
    Eigen::MatrixXd root =
        ev.eigenvectors() * ev.eigenvalues().cwiseSqrt().asDiagonal() * ev.eigenvectors().transpose();
    Eigen::MatrixXcd ij = cd(0.0, 1.0) * commutator_j(n).cast<cd>();
    Eigen::MatrixXcd m = root.cast<cd>() * ij * root.cast<cd>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("symplectic_spectrum: eigensolver failed");
    for (int i = 0; i < n; ++i) {
      const double lambda = es.eigenvalues()(i);
      if (lambda > 0.0) out.nu.push_back(2.0 * lambda);
    }
    out.hermitian_route = true;
  } else {
    // Indefinite V from discretization error: general eigensolve of J^-1 V,
    // moduli collected in conjugate pairs.
    Eigen::MatrixXd jinv_v = -commutator_j(n) * v;
    Eigen::EigenSolver<Eigen::MatrixXd> es(jinv_v, false);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("symplectic_spectrum: general eigensolver failed");
    std::vector<double> mods(n);
    for (int i = 0; i < n; ++i) mods[i] = std::abs(es.eigenvalues()(i));
    std::sort(mods.begin(), mods.end());
    for (int i = 0; i + 1 < n; i += 2) out.nu.push_back(mods[i] + mods[i + 1]);  // 2 |eig|
    out.hermitian_route = false;
  }
  std::sort(out.nu.begin(), out.nu.end());
  if (static_cast<int>(out.nu.size()) != n / 2)
    throw std::runtime_error("symplectic_spectrum: pairing failed");
  return out;
}

double log_negativity(const std::vector<double>& nu) {
  double e = 0.0;
  for (double x : nu)
    if (x > 0.0 && x < 1.0) e += -std::log2(x);
  return e;
}

Verdict decide_verdict(double lambda_b, double lambda_n, double eps) {
  const bool b_nonneg = lambda_b >= -eps;
  const bool n_neg = lambda_n < -eps;
  if (b_nonneg && n_neg) return Verdict::Entangled;
  if (b_nonneg && !n_neg) return Verdict::Separable;
  if (n_neg && std::abs(lambda_n) >= 100.0 * std::abs(lambda_b)) return Verdict::Entangled;
  return Verdict::Undecidable;
}

ModeFunction extract_mode(const CovarianceSet& set) {
  const double eps = epsilon_num(set);
  CovarianceSet pt = partial_transpose(set);
  Eigen::MatrixXcd h = heisenberg_matrix(pt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("extract_mode: eigensolver failed");
  if (es.eigenvalues()(0) >= -eps)
    throw std::domain_error("extract_mode: no negative PPT eigenvalue");

  const int nq = set.n_q();
  const int nb = set.grid.n_bins;
  Eigen::VectorXcd vec = es.eigenvectors().col(0).segment(nq, 2 * nb);
  vec /= vec.norm();

  ModeFunction mode;
  mode.times.resize(nb);
  mode.e1.resize(nb);
  mode.e2.resize(nb);
  for (int a = 0; a < nb; ++a) {
    mode.times[a] = set.grid.t(a);
    mode.e1(a) = vec(2 * a);
    mode.e2(a) = vec(2 * a + 1);
  }
  mode.fit = fit_decaying_sinusoid(mode.times, {real_curve(mode.e1), imag_curve(mode.e1),
                                                real_curve(mode.e2), imag_curve(mode.e2)});
  return mode;
}

json EntanglementReport::to_json() const {
  json j{{"lambda_b", lambda_b},
         {"lambda_n", lambda_n},
         {"nu_min", nu_min},
         {"verdict", verdict_name(verdict)},
         {"hermitian_route", hermitian_route},
         {"eps_num", eps}};
  if (verdict == Verdict::Undecidable)
    j["e_n"] = nullptr;
  else
    j["e_n"] = e_n;
  if (mode) {
    j["mode_fit"] = json{{"omega_star_hz", mode->fit.omega_star / kTwoPi},
                         {"gamma_star_hz", mode->fit.gamma_star / kTwoPi},
                         {"amplitude", mode->fit.amplitude},
                         {"phase", mode->fit.phase},
                         {"r_squared", mode->fit.r_squared},
                         {"converged", mode->fit.converged}};
  }
  return j;
}

EntanglementReport analyze(const CovarianceSet& set, bool with_mode) {
  EntanglementReport r;
  r.eps = epsilon_num(set);
  r.lambda_b = physicality_lambda(set);
  r.lambda_n = ppt_lambda(set);
  r.verdict = decide_verdict(r.lambda_b, r.lambda_n, r.eps);
  SymplecticSpectrum s = symplectic_spectrum(set, true);
  r.hermitian_route = s.hermitian_route;
  r.nu_min = s.nu.empty() ? 0.0 : s.nu.front();
  r.e_n = log_negativity(s.nu);
  if (with_mode && r.verdict == Verdict::Entangled && r.lambda_n < -r.eps)
    r.mode = extract_mode(set);
  return r;
}

ScanResult convergence_scan(const SystemParams& params, const NoiseModel& model,
                            Partition partition, double duration,
                            const std::vector<double>& dt_list,
                            const IntegratorSettings& settings) {
  ScanResult out;
  for (double dt : dt_list) {
    ScanPoint p;
    p.dt = dt;
    p.n_bins = std::max(2, static_cast<int>(std::llround(duration / dt)));
    try {
      TimeGrid grid{p.n_bins, dt};
      CovarianceSet set = build_covariance(params, model, partition, grid, settings);
      p.lambda_b = physicality_lambda(set);
      p.lambda_n = ppt_lambda(set);
      p.ok = true;
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    out.points.push_back(p);
  }
  // Convergence: < 5% relative change of both lambdas over the final pair.
  const ScanPoint* prev = nullptr;
  const ScanPoint* last = nullptr;
  for (const auto& p : out.points)
    if (p.ok) {
      prev = last;
      last = &p;
    }
  if (prev && last) {
    auto rel = [](double a, double b) {
      const double d = std::abs(b - a);
      if (d < 1e-12 * std::max(1.0, std::abs(a))) return 0.0;
      return d / std::max(std::abs(a), 1e-300);
    };
    out.converged = rel(prev->lambda_b, last->lambda_b) < 0.05 &&
                    rel(prev->lambda_n, last->lambda_n) < 0.05;
  }
  return out;
}

}  // namespace optent
