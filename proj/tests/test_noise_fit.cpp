#include <doctest.h>

#include <cmath>

#include "optent/errors.hpp"
#include "optent/noise_fit.hpp"

using namespace optent;

namespace {

// Log-spaced synthetic samples from a model evaluator.
template <class F>
void synth(F&& f, double f_lo, double f_hi, int n, std::vector<double>& fr,
           std::vector<double>& psd) {
  for (int i = 0; i < n; ++i) {
    const double fh = f_lo * std::pow(f_hi / f_lo, double(i) / (n - 1));
    fr.push_back(fh);
    psd.push_back(f(kTwoPi * fh));
  }
}

}  // namespace

TEST_CASE("recovers the rational force-noise parameters from clean data") {
  const double tau_f = 1.6e-20, wf = kTwoPi * 0.25;
  std::vector<double> fr, psd;
  synth([&](double w) { return tau_f / (std::pow(w / wf, 14) + 1.0); }, 0.01, 10.0, 120, fr, psd);
  NoiseFitResult res = fit_noise_model(fr, psd, NoiseFitTemplate::from_name("ligo_force"));
  CHECK(res.converged);
  CHECK(res.values[0] == doctest::Approx(tau_f).epsilon(1e-3));
  CHECK(res.values[1] == doctest::Approx(wf).epsilon(1e-3));
  CHECK(res.residual_rms < 1e-6);
}

TEST_CASE("recovers the suspension-thermal parameters from clean data") {
  const double tau_st = 3.1e-35, wst = kTwoPi * 1.9e3;
  std::vector<double> fr, psd;
  synth([&](double w) { return tau_st / (std::pow(w / wst, 8) + 1.0); }, 10.0, 2e4, 150, fr, psd);
  NoiseFitResult res = fit_noise_model(fr, psd, NoiseFitTemplate::from_name("suspension"));
  CHECK(res.converged);
  CHECK(res.values[0] == doctest::Approx(tau_st).epsilon(1e-3));
  CHECK(res.values[1] == doctest::Approx(wst).epsilon(1e-3));
}

TEST_CASE("sensing fit recovers both time constants") {
  const double tau_x1 = 1e-50, tau_x2 = 1e-48, wx = kTwoPi * 1e4;
  std::vector<double> fr, psd;
  synth([&](double w) { return tau_x1 * (w / wx) * (w / wx) + tau_x2; }, 10.0, 1e6, 150, fr, psd);
  NoiseFitTemplate t = NoiseFitTemplate::from_name("ligo_sensing");
  t.omega_x = wx;
  NoiseFitResult res = fit_noise_model(fr, psd, t);
  CHECK(res.converged);
  CHECK(res.values[0] == doctest::Approx(tau_x1).epsilon(1e-3));
  CHECK(res.values[1] == doctest::Approx(tau_x2).epsilon(1e-3));
}

TEST_CASE("empty and degenerate tables are rejected") {
  CHECK_THROWS_AS(fit_noise_model({}, {}, NoiseFitTemplate{}), std::domain_error);
  CHECK_THROWS_AS(fit_noise_model({1.0, 2.0}, {1e-3, 1e-3}, NoiseFitTemplate{}),
                  std::domain_error);
}

TEST_CASE("fit result serializes the published field names") {
  std::vector<double> fr, psd;
  synth([&](double w) { return 1e-20 / (std::pow(w / (kTwoPi * 0.3), 14) + 1.0); }, 0.01, 10.0,
        80, fr, psd);
  NoiseFitResult res = fit_noise_model(fr, psd, NoiseFitTemplate::from_name("ligo_force"));
  auto j = res.to_json();
  CHECK(j["params"].contains("tau_f"));
  CHECK(j["params"].contains("omega_f"));
  CHECK(j.contains("residual_rms_log10"));
}
