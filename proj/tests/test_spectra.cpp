#include <doctest.h>

#include <cmath>
#include <random>

#include "optent/errors.hpp"
#include "optent/model.hpp"
#include "optent/spectra.hpp"

using namespace optent;

TEST_CASE("loss angle") {
  CHECK(loss_angle(0.0, 0.05, kTwoPi * 0.05) == 0.0);
  const double wc = kTwoPi * 0.05;
  CHECK(loss_angle(wc, 0.05, wc) == doctest::Approx(0.025));
  CHECK(loss_angle(99.0 * wc, 0.05, wc) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(loss_angle(-3.0, 0.05, wc) == loss_angle(3.0, 0.05, wc));
  CHECK_THROWS_AS(loss_angle(1.0, -0.1, wc), std::domain_error);
}

TEST_CASE("ligo force spectrum anchor points") {
  NoiseModel m = NoiseModel::aligo_baseline();
  CHECK(m.force_spectrum(0.0) == doctest::Approx(1.6e-20));
  // half-power at the knee |W| alpha_f2 / w_f = 1
  const double knee = kTwoPi * 0.25;
  CHECK(m.force_spectrum(knee) == doctest::Approx(0.5 * 1.6e-20));
  NoiseModel::LigoParams p;
  p.alpha_f2 = 15.0;
  NoiseModel shifted = NoiseModel::ligo(p);
  CHECK(shifted.force_spectrum(knee / 15.0) == doctest::Approx(0.5 * 1.6e-20));
}

TEST_CASE("ligo sensing spectrum anchor points") {
  NoiseModel m = NoiseModel::aligo_baseline();
  CHECK(m.sensing_spectrum(0.0) == doctest::Approx(1e-48));
  CHECK(m.sensing_spectrum(kTwoPi * 1e4) == doctest::Approx(1e-50 + 1e-48));
}

TEST_CASE("structural spectra asymptotics") {
  const double mass = 2.3, wf = kTwoPi * 100.0, wx = kTwoPi * 260.0, wc = kTwoPi * 0.05;
  NoiseModel m = NoiseModel::structural(mass, wf, wx, 0.05, wc);
  // force channel approaches 2 hbar M W_F^3 / |W| well above the cutoff
  for (double w : {99.0 * wc, 500.0 * wc, 1e4}) {
    const double limit = 2.0 * kHbar * mass * wf * wf * wf / w;
    CHECK(m.force_spectrum(w) == doctest::Approx(limit).epsilon(0.011));
  }
  // position-referred sensing vs SQL: S_X / S_SQL -> |W| / W_X
  const double w = 1000.0 * wc;
  CHECK(m.sensing_spectrum(w) / sql_free_mass(w, mass) ==
        doctest::Approx(w * w / (wx * (w + wc))).epsilon(1e-12));
}

TEST_CASE("vacuum input spectrum") {
  CHECK(vacuum_input_spectrum(0, 0) == 1.0);
  CHECK(vacuum_input_spectrum(1, 1) == 1.0);
  CHECK(vacuum_input_spectrum(0, 1) == 0.0);
  CHECK(vacuum_input_spectrum(1, 0) == 0.0);
  CHECK_THROWS_AS(vacuum_input_spectrum(2, 0), std::domain_error);
}

TEST_CASE("spectra are even and nonnegative (randomized)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 120; ++trial) {
    NoiseModel m;
    switch (trial % 4) {
      case 0:
        m = NoiseModel::white(0.1 + 10 * uni(rng), kTwoPi * 500 * uni(rng),
                              kTwoPi * (1 + 500 * uni(rng)));
        break;
      case 1:
        m = NoiseModel::structural(0.1 + 10 * uni(rng), kTwoPi * (1 + 300 * uni(rng)),
                                   kTwoPi * (1 + 300 * uni(rng)), 0.2 * uni(rng),
                                   kTwoPi * (0.01 + uni(rng)));
        break;
      case 2: {
        NoiseModel::LigoParams p;
        p.alpha_f1 = std::pow(10.0, -15.0 * uni(rng));
        p.alpha_f2 = std::pow(10.0, 2.0 * (uni(rng) - 0.5));
        if (trial % 8 == 2) p.resonances = aligo_resonant_modes();
        m = NoiseModel::ligo(p);
        break;
      }
      default:
        m = NoiseModel::suspension_only();
    }
    const double w = std::pow(10.0, 6.0 * uni(rng) - 1.0);
    CHECK(m.force_spectrum(w) == m.force_spectrum(-w));
    CHECK(m.sensing_spectrum(w) == m.sensing_spectrum(-w));
    CHECK(m.force_spectrum(w) >= 0.0);
    CHECK(m.sensing_spectrum(w) >= 0.0);
  }
}

TEST_CASE("alpha = 1 with resonances off is the stored baseline, bit for bit") {
  NoiseModel::LigoParams p;
  p.alpha_f1 = p.alpha_f2 = p.alpha_x1 = p.alpha_x2 = 1.0;
  NoiseModel a = NoiseModel::ligo(p);
  NoiseModel b = NoiseModel::aligo_baseline();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const double w = std::pow(10.0, uni(rng));
    CHECK(a.force_spectrum(w) == b.force_spectrum(w));
    CHECK(a.sensing_spectrum(w) == b.sensing_spectrum(w));
  }
}

TEST_CASE("resonant modes never decrease the force spectrum") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  NoiseModel::LigoParams base;
  NoiseModel plain = NoiseModel::ligo(base);
  for (int i = 0; i < 120; ++i) {
    NoiseModel::LigoParams p;
    p.resonances.push_back({kTwoPi * (0.1 + 10 * uni(rng)), kTwoPi * (1e-4 + 0.1 * uni(rng)),
                            1.0 + 500.0 * uni(rng)});
    NoiseModel with_mode = NoiseModel::ligo(p);
    const double w = std::pow(10.0, 4.0 * uni(rng) - 2.0);
    CHECK(with_mode.force_spectrum(w) >= plain.force_spectrum(w));
  }
}

TEST_CASE("structural force spectrum reaches the white limit") {
  // W_c -> inf with W_F^3 / W_c = W_Fwhite^2 held fixed
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double mass = 1.7, wf_white = kTwoPi * 120.0;
  NoiseModel white = NoiseModel::white(mass, wf_white, kTwoPi * 100);
  for (int i = 0; i < 10; ++i) {
    const double w = std::pow(10.0, 4.0 * uni(rng) - 1.0);
    const double wc = 1e9 * w;
    const double wf3 = wf_white * wf_white * wc;
    NoiseModel structural = NoiseModel::structural(mass, std::cbrt(wf3), kTwoPi * 100, 0.05, wc);
    CHECK(structural.force_spectrum(w) ==
          doctest::Approx(white.force_spectrum(w)).epsilon(1e-8));
  }
}

TEST_CASE("tabulated spectrum interpolation and tails") {
  TabulatedSpectrum t({1.0, 10.0, 100.0}, {1e-30, 1e-32, 1e-36}, std::nullopt, -2.0);
  CHECK(t(kTwoPi * 10.0) == doctest::Approx(1e-32));
  // log-log midpoint between (1, 1e-30) and (10, 1e-32)
  CHECK(t(kTwoPi * std::sqrt(10.0)) == doctest::Approx(1e-31));
  // high tail configured as f^-2
  CHECK(t(kTwoPi * 1000.0) == doctest::Approx(1e-38));
  // low side has no rule
  CHECK_THROWS_AS(t(kTwoPi * 0.1), IntegrationError);
  CHECK_THROWS_AS(TabulatedSpectrum({1.0, 1.0}, {1e-3, 1e-3}), std::domain_error);
}
