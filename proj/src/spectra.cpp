#include "optent/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optent/errors.hpp"

namespace optent {

std::vector<ResonantMode> aligo_resonant_modes() {
  return {
      {kTwoPi * 0.441, kTwoPi * 1.92e-3, 159.0},
      {kTwoPi * 0.995, kTwoPi * 5.63e-5, 93.8},
      {kTwoPi * 1.98, kTwoPi * 2.11e-5, 538.0},
      {kTwoPi * 2.37, kTwoPi * 1.44e-1, 235.0},
      {kTwoPi * 3.38, kTwoPi * 1.45e-4, 353.0},
      {kTwoPi * 3.81, kTwoPi * 1.65e-3, 27.4},
      {kTwoPi * 9.73, kTwoPi * 1.03e-3, 78.0},
  };
}

double loss_angle(double omega, double phi, double omega_c) {
  if (phi < 0.0) throw std::domain_error("loss_angle: phi must be >= 0");
  if (omega_c <= 0.0) throw std::domain_error("loss_angle: Omega_c must be positive");
  const double w = std::abs(omega);
  return phi * w / (w + omega_c);
}

TabulatedSpectrum::TabulatedSpectrum(std::vector<double> freq_hz, std::vector<double> psd,
                                     std::optional<double> tail_exp_low,
                                     std::optional<double> tail_exp_high)
    : freq_hz_(std::move(freq_hz)),
      psd_(std::move(psd)),
      tail_exp_low_(tail_exp_low),
      tail_exp_high_(tail_exp_high) {
  if (freq_hz_.size() != psd_.size() || freq_hz_.size() < 2)
    throw std::domain_error("TabulatedSpectrum: need >= 2 matching samples");
  for (std::size_t i = 0; i < freq_hz_.size(); ++i) {
    if (freq_hz_[i] <= 0.0 || psd_[i] <= 0.0)
      throw std::domain_error("TabulatedSpectrum: frequencies and PSDs must be positive");
    if (i > 0 && freq_hz_[i] <= freq_hz_[i - 1])
      throw std::domain_error("TabulatedSpectrum: frequencies must be strictly increasing");
  }
}

double TabulatedSpectrum::operator()(double omega) const {
  if (empty()) throw std::domain_error("TabulatedSpectrum: empty table");
  const double f = std::abs(omega) / kTwoPi;
  const double flo = freq_hz_.front(), fhi = freq_hz_.back();
  if (f < flo) {
    if (!tail_exp_low_)
      throw IntegrationError("TabulatedSpectrum: query below sampled band and no tail rule");
    if (f == 0.0) {
      if (*tail_exp_low_ > 0.0) return 0.0;
      if (*tail_exp_low_ == 0.0) return psd_.front();
      throw IntegrationError("TabulatedSpectrum: diverging low-frequency tail at DC");
    }
    return psd_.front() * std::pow(f / flo, *tail_exp_low_);
  }
  if (f > fhi) {
    if (!tail_exp_high_)
      throw IntegrationError("TabulatedSpectrum: query above sampled band and no tail rule");
    return psd_.back() * std::pow(f / fhi, *tail_exp_high_);
  }
  auto it = std::upper_bound(freq_hz_.begin(), freq_hz_.end(), f);
  std::size_t hi = std::min<std::size_t>(freq_hz_.size() - 1,
                                         static_cast<std::size_t>(it - freq_hz_.begin()));
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double u = (std::log(f) - std::log(freq_hz_[lo])) /
                   (std::log(freq_hz_[hi]) - std::log(freq_hz_[lo]));
  return std::exp((1.0 - u) * std::log(psd_[lo]) + u * std::log(psd_[hi]));
}

NoiseModel NoiseModel::none() {
  NoiseModel m;
  m.family_ = Family::None;
  return m;
}

NoiseModel NoiseModel::white(double mass, double omega_f, double omega_x) {
  if (mass <= 0.0 || omega_f < 0.0 || omega_x <= 0.0)
    throw std::domain_error("NoiseModel::white: bad parameters");
  NoiseModel m;
  m.family_ = Family::White;
  m.mass_ = mass;
  m.omega_f_ = omega_f;
  m.omega_x_ = omega_x;
  return m;
}

NoiseModel NoiseModel::structural(double mass, double omega_f, double omega_x, double phi,
                                  double omega_c) {
  if (mass <= 0.0 || omega_f <= 0.0 || omega_x <= 0.0 || phi < 0.0 || omega_c <= 0.0)
    throw std::domain_error("NoiseModel::structural: bad parameters");
  NoiseModel m;
  m.family_ = Family::Structural;
  m.mass_ = mass;
  m.omega_f_ = omega_f;
  m.omega_x_ = omega_x;
  m.phi_ = phi;
  m.omega_c_ = omega_c;
  return m;
}

NoiseModel NoiseModel::ligo(LigoParams p) {
  if (p.tau_f <= 0.0 || p.omega_f <= 0.0 || p.tau_x1 <= 0.0 || p.tau_x2 <= 0.0 ||
      p.omega_x <= 0.0)
    throw std::domain_error("NoiseModel::ligo: time constants and cutoffs must be positive");
  if (p.alpha_f1 <= 0.0 || p.alpha_f2 <= 0.0 || p.alpha_x1 <= 0.0 || p.alpha_x2 <= 0.0)
    throw std::domain_error("NoiseModel::ligo: alpha knobs must be positive");
  for (const auto& r : p.resonances)
    if (r.omega <= 0.0 || r.fwhm <= 0.0 || r.amplitude <= 0.0)
      throw std::domain_error("NoiseModel::ligo: resonant mode parameters must be positive");
  NoiseModel m;
  m.family_ = Family::LigoParam;
  m.ligo_ = std::move(p);
  return m;
}

NoiseModel NoiseModel::aligo_baseline() { return ligo(LigoParams{}); }

NoiseModel NoiseModel::suspension_only(double tau_st, double omega_st) {
  if (tau_st <= 0.0 || omega_st <= 0.0)
    throw std::domain_error("NoiseModel::suspension_only: parameters must be positive");
  NoiseModel m;
  m.family_ = Family::SuspensionOnly;
  m.tau_st_ = tau_st;
  m.omega_st_ = omega_st;
  m.ligo_ = LigoParams{};  // sensing channel unchanged from the aLIGO model
  return m;
}

NoiseModel NoiseModel::tabulated(TabulatedSpectrum force, TabulatedSpectrum sensing) {
  NoiseModel m;
  m.family_ = Family::Tabulated;
  m.force_table_ = std::move(force);
  m.sensing_table_ = std::move(sensing);
  return m;
}

bool NoiseModel::force_is_zero() const {
  switch (family_) {
    case Family::None: return true;
    case Family::White: return omega_f_ == 0.0;
    default: return false;
  }
}

bool NoiseModel::sensing_is_zero() const { return family_ == Family::None; }

namespace {

double ligo_force_envelope(const NoiseModel::LigoParams& p, double w) {
  const double r = w * p.alpha_f2 / p.omega_f;
  return p.tau_f * p.alpha_f1 / (std::pow(r, 14) + 1.0);
}

double resonance_factor(const std::vector<ResonantMode>& modes, double w) {
  double s = 0.0;
  for (const auto& r : modes) {
    const double d = w - r.omega;
    const double hw = 0.5 * r.fwhm;
    s += r.amplitude * r.amplitude / (d * d + hw * hw);
  }
  return 1.0 + s;
}

}  // namespace

double NoiseModel::force_spectrum(double omega) const {
  const double w = std::abs(omega);
  switch (family_) {
    case Family::None:
      return 0.0;
    case Family::White:
      return 2.0 * kHbar * mass_ * omega_f_ * omega_f_;
    case Family::Structural:
      return 2.0 * kHbar * mass_ * omega_f_ * omega_f_ * omega_f_ / (w + omega_c_);
    case Family::LigoParam:
      return ligo_force_envelope(ligo_, w) *
             (ligo_.resonances.empty() ? 1.0 : resonance_factor(ligo_.resonances, w));
    case Family::SuspensionOnly:
      return tau_st_ / (std::pow(w / omega_st_, 8) + 1.0);
    case Family::Tabulated:
      return force_table_(w);
  }
  return 0.0;
}

double NoiseModel::sensing_spectrum(double omega) const {
  const double w = std::abs(omega);
  switch (family_) {
    case Family::None:
      return 0.0;
    case Family::White:
      return 2.0 * kHbar / (mass_ * omega_x_ * omega_x_);
    case Family::Structural:
      return 2.0 * kHbar / (mass_ * omega_x_ * (w + omega_c_));
    case Family::LigoParam:
    case Family::SuspensionOnly: {
      const double r = w / ligo_.omega_x;
      return ligo_.tau_x1 * r * r * ligo_.alpha_x1 + ligo_.tau_x2 * ligo_.alpha_x2;
    }
    case Family::Tabulated:
      return sensing_table_(w);
  }
  return 0.0;
}

void NoiseModel::set_knob(const std::string& name, double value) {
  auto need = [&](bool ok) {
    if (!ok)
      throw ConfigError("noise knob '" + name + "' not available for family " + family_name());
  };
  if (name == "alpha_f1") {
    need(family_ == Family::LigoParam);
    ligo_.alpha_f1 = value;
  } else if (name == "alpha_f2") {
    need(family_ == Family::LigoParam);
    ligo_.alpha_f2 = value;
  } else if (name == "alpha_x1") {
    need(family_ == Family::LigoParam || family_ == Family::SuspensionOnly);
    ligo_.alpha_x1 = value;
  } else if (name == "alpha_x2") {
    need(family_ == Family::LigoParam || family_ == Family::SuspensionOnly);
    ligo_.alpha_x2 = value;
  } else if (name == "omega_f_hz") {
    need(family_ == Family::White || family_ == Family::Structural);
    omega_f_ = kTwoPi * value;
  } else if (name == "omega_x_hz") {
    need(family_ == Family::White || family_ == Family::Structural);
    omega_x_ = kTwoPi * value;
  } else if (name == "omega_x_over_omega_f") {
    need(family_ == Family::White || family_ == Family::Structural);
    omega_x_ = value * omega_f_;
  } else if (name == "phi") {
    need(family_ == Family::Structural);
    phi_ = value;
  } else if (name == "omega_c_hz") {
    need(family_ == Family::Structural);
    omega_c_ = kTwoPi * value;
  } else if (name == "tau_st") {
    need(family_ == Family::SuspensionOnly);
    tau_st_ = value;
  } else {
    throw ConfigError("unknown noise knob '" + name + "'");
  }
}

std::string NoiseModel::family_name() const {
  switch (family_) {
    case Family::None: return "none";
    case Family::White: return "white";
    case Family::Structural: return "structural";
    case Family::LigoParam: return "ligo";
    case Family::SuspensionOnly: return "suspension_only";
    case Family::Tabulated: return "tabulated";
  }
  return "?";
}

double vacuum_input_spectrum(int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 1)
    throw std::domain_error("vacuum_input_spectrum: indices must be 0 or 1");
  return i == j ? 1.0 : 0.0;
}

}  // namespace optent
