#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include "helpers.hpp"
#include "optent/entanglement.hpp"
#include "optent/oracles.hpp"

using namespace optent;

namespace {

SystemParams vacuum_params_for_scan() {
  SystemParams p = SystemParams::aligo();
  p.coupling = 0.0;
  p.mech_damping = 0.0;
  return p;
}

}  // namespace

TEST_CASE("vacuum saturates the Heisenberg bound") {
  CovarianceSet set = test::wrap(vacuum_state(4).v);
  CHECK(std::abs(physicality_lambda(set)) < 1e-9);
  CHECK(std::abs(ppt_lambda(set)) < 1e-9);
  SymplecticSpectrum s = symplectic_spectrum(set, false);
  for (double nu : s.nu) CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(log_negativity(symplectic_spectrum(set, true).nu) == 0.0);
}

TEST_CASE("thermal states are interior points") {
  Eigen::MatrixXd v = vacuum_state(3).v;
  v(0, 0) = v(1, 1) = 2.5;  // hot mechanics
  CovarianceSet set = test::wrap(v);
  CHECK(physicality_lambda(set) > 0.0);
  CHECK(ppt_lambda(set) > 0.0);
  CHECK(decide_verdict(physicality_lambda(set), ppt_lambda(set), epsilon_num(set)) ==
        Verdict::Separable);
}

TEST_CASE("single-mode thermal symplectic eigenvalue") {
  CovarianceSet set = test::wrap(thermal_state(1.0).v);  // variance 3/2 raw
  SymplecticSpectrum s = symplectic_spectrum(set, false);
  REQUIRE(s.nu.size() == 1);
  CHECK(s.nu[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("two-mode squeezed vacuum against closed forms") {
  for (double r : {0.1, 0.5, 1.0}) {
    CovarianceSet set = test::wrap(tmsv_covariance(r).v);
    // pure state: spectrum before transposition is {1, 1}
    SymplecticSpectrum plain = symplectic_spectrum(set, false);
    for (double nu : plain.nu) CHECK(nu == doctest::Approx(1.0).epsilon(1e-9));
    // after transposition: nu_min = e^{-2r}, E_N = 2r log2(e)
    SymplecticSpectrum pt = symplectic_spectrum(set, true);
    CHECK(pt.nu.front() == doctest::Approx(std::exp(-2.0 * r)).epsilon(1e-9));
    CHECK(log_negativity(pt.nu) ==
          doctest::Approx(2.0 * r / std::log(2.0)).epsilon(1e-9));
    if (r >= 0.5) CHECK(ppt_lambda(set) < 0.0);
  }
  // r = 0 is the vacuum
  CHECK(log_negativity(symplectic_spectrum(test::wrap(tmsv_covariance(0.0).v), true).nu) == 0.0);
}

TEST_CASE("log negativity arithmetic") {
  CHECK(log_negativity({1.0, 1.3, 7.0}) == 0.0);
  CHECK(log_negativity({0.5, 1.1}) == doctest::Approx(1.0));
}

TEST_CASE("verdict rules") {
  const double eps = 1e-9;
  CHECK(decide_verdict(1e-9, -1e-3, eps) == Verdict::Entangled);
  CHECK(decide_verdict(1e-9, 1e-4, eps) == Verdict::Separable);
  CHECK(decide_verdict(-1e-3, -1.5e-3, eps) == Verdict::Undecidable);
  CHECK(decide_verdict(-1e-6, -1e-3, eps) == Verdict::Entangled);  // |l_N| >= 100 |l_B|
  CHECK(decide_verdict(-1e-3, 1e-4, eps) == Verdict::Undecidable);
}

TEST_CASE("PPT boundary matches the symplectic threshold (randomized)") {
  std::mt19937 rng(101);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    CovarianceSet set = test::wrap(test::random_gaussian_state(rng, 2 + i % 3));
    const double ln = ppt_lambda(set);
    SymplecticSpectrum s = symplectic_spectrum(set, true);
    const double eps = epsilon_num(set);
    if (std::abs(ln) > 10.0 * eps) {
      CHECK((s.nu.front() - 1.0) * ln > 0.0);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("at most one symplectic eigenvalue below 1 for 1-vs-rest cuts") {
  std::mt19937 rng(57);
  for (int i = 0; i < 120; ++i) {
    CovarianceSet set = test::wrap(test::random_gaussian_state(rng, 3 + i % 2, 1.2));
    SymplecticSpectrum s = symplectic_spectrum(set, true);
    int below = 0;
    for (double nu : s.nu)
      if (nu < 1.0 - 1e-10) ++below;
    CHECK(below <= 1);
  }
}

TEST_CASE("scaling the covariance never decreases the minimal eigenvalue") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> uni(1.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    Eigen::MatrixXd v = test::random_gaussian_state(rng, 2);
    const double c = uni(rng);
    const double nu1 = symplectic_spectrum(test::wrap(v), true).nu.front();
    const double nu2 = symplectic_spectrum(test::wrap((c * v).eval()), true).nu.front();
    CHECK(nu2 >= nu1 * (1.0 - 1e-12));
  }
}

TEST_CASE("lambdas are invariant under time-bin relabeling") {
  TimeGrid grid{30, 1e-3};
  CovarianceSet set = build_covariance(SystemParams::aligo(), NoiseModel::suspension_only(),
                                       Partition::CavityTraced, grid);
  const double lb = physicality_lambda(set), ln = ppt_lambda(set);

  std::mt19937 rng(5);
  std::vector<int> perm(grid.n_bins);
  for (int i = 0; i < grid.n_bins; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  const int nq = set.n_q();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(set.dim(), set.dim());
  p.topLeftCorner(nq, nq).setIdentity();
  for (int a = 0; a < grid.n_bins; ++a)
    for (int q = 0; q < 2; ++q) p(nq + 2 * a + q, nq + 2 * perm[a] + q) = 1.0;
  CovarianceSet shuffled = set;
  shuffled.v = p * set.v * p.transpose();
  const double scale = std::max(1.0, set.v.cwiseAbs().maxCoeff());
  CHECK(std::abs(physicality_lambda(shuffled) - lb) < 1e-10 * scale);
  CHECK(std::abs(ppt_lambda(shuffled) - ln) < 1e-10 * scale);
}

TEST_CASE("negativity ordering between partitions on a low-noise case") {
  TimeGrid grid{100, 0.5e-3};
  SystemParams p = SystemParams::aligo();
  NoiseModel m = NoiseModel::suspension_only();
  CovarianceSet full = build_covariance(p, m, Partition::WithCavity, grid);
  EntanglementReport rep_full = analyze(full);
  EntanglementReport rep_traced = analyze(cavity_traced(full));
  CHECK(rep_full.e_n >= rep_traced.e_n - 1e-9);
}

TEST_CASE("decaying-sinusoid fit recovers synthetic parameters") {
  const double w0 = kTwoPi * 40.0, g0 = kTwoPi * 25.0;
  const int n = 400;
  std::vector<double> times(n);
  Eigen::VectorXd y1(n), y2(n), y3(n), y4(n);
  for (int i = 0; i < n; ++i) {
    const double t = -(i + 0.5) * 0.25e-3;
    times[i] = t;
    const double env = std::exp(-g0 * std::abs(t));
    y1(i) = 0.8 * env * std::sin(w0 * t + 0.3);
    y2(i) = 0.5 * env * std::sin(w0 * t + 1.1);
    y3(i) = 1.2 * env * std::sin(w0 * t - 0.4);
    y4(i) = 0.9 * env * std::sin(w0 * t + 2.0);
  }
  ModeFit fit = fit_decaying_sinusoid(times, {y1, y2, y3, y4});
  CHECK(fit.converged);
  CHECK(fit.omega_star == doctest::Approx(w0).epsilon(1e-6));
  CHECK(fit.gamma_star == doctest::Approx(g0).epsilon(1e-6));
  CHECK(fit.r_squared > 0.999999);
  CHECK(fit.amplitude[2] == doctest::Approx(1.2).epsilon(1e-4));
}

TEST_CASE("mode extraction requires a negative PPT eigenvalue") {
  CovarianceSet set = test::wrap(vacuum_state(6).v);
  set.grid.n_bins = 5;
  CHECK_THROWS_AS(extract_mode(set), std::domain_error);
}

TEST_CASE("mode extraction on an entangled pipeline state") {
  TimeGrid grid{120, 0.5e-3};
  CovarianceSet set = build_covariance(SystemParams::aligo(), NoiseModel::suspension_only(),
                                       Partition::WithCavity, grid);
  REQUIRE(ppt_lambda(set) < -epsilon_num(set));
  ModeFunction mode = extract_mode(set);
  double norm2 = 0.0;
  for (int i = 0; i < grid.n_bins; ++i) norm2 += std::norm(mode.e1(i)) + std::norm(mode.e2(i));
  CHECK(std::sqrt(norm2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mode.times.size() == static_cast<std::size_t>(grid.n_bins));
}

TEST_CASE("convergence scan bookkeeping") {
  SystemParams p = vacuum_params_for_scan();
  ScanResult scan = convergence_scan(p, NoiseModel::none(), Partition::WithCavity, 0.02,
                                     {2e-3, 1e-3});
  CHECK(scan.points.size() == 2);
  CHECK(scan.points[0].ok);
  CHECK(scan.points[1].ok);
  CHECK(scan.converged);  // identical (vacuum) lambdas at both resolutions

  // per-point failures are recorded, the scan continues
  SystemParams bad = SystemParams::free_mass(kTwoPi * 50, kTwoPi * 1.0, 0.0);
  NoiseModel noisy = NoiseModel::white(bad.mass, kTwoPi * 100, kTwoPi * 150);
  ScanResult scan2 = convergence_scan(bad, noisy, Partition::AdiabaticNoCavity, 0.02,
                                      {2e-3, 1e-3});
  CHECK(scan2.points.size() == 2);
  CHECK_FALSE(scan2.points[0].ok);
  CHECK_FALSE(scan2.points[1].ok);
  CHECK_FALSE(scan2.converged);
}
