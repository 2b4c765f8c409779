#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optent/constants.hpp"

namespace optent {

/// One suspension resonance: a Lorentzian multiplying the force-noise envelope.
struct ResonantMode {
  double omega = 0.0;      // center, rad/s
  double fwhm = 0.0;       // rad/s
  double amplitude = 0.0;  // rad/s
};

/// Dominant rigid-body suspension modes of the quadruple pendulum.
std::vector<ResonantMode> aligo_resonant_modes();

/// Loss angle phi(W) = phi |W| / (|W| + W_c): ~phi above the cutoff, 0 at DC.
/// Odd-parity sign is applied where it enters the mechanical response.
double loss_angle(double omega, double phi, double omega_c);

/// Sampled spectrum with log-log linear interpolation. Queries outside the
/// table throw unless a power-law tail exponent is configured for that side.
class TabulatedSpectrum {
 public:
  TabulatedSpectrum() = default;
  TabulatedSpectrum(std::vector<double> freq_hz, std::vector<double> psd,
                    std::optional<double> tail_exp_low = std::nullopt,
                    std::optional<double> tail_exp_high = std::nullopt);
  double operator()(double omega) const;  // omega in rad/s
  bool empty() const { return freq_hz_.empty(); }
  const std::vector<double>& frequencies_hz() const { return freq_hz_; }
  const std::vector<double>& psd() const { return psd_; }

 private:
  std::vector<double> freq_hz_;
  std::vector<double> psd_;
  std::optional<double> tail_exp_low_;
  std::optional<double> tail_exp_high_;
};

/// Classical force (N^2/Hz) and sensing (m^2/Hz) noise spectral densities.
/// All families evaluate even in Omega and nonnegative.
class NoiseModel {
 public:
  enum class Family { None, White, Structural, LigoParam, SuspensionOnly, Tabulated };

  /// Parameters of the rational aLIGO models; defaults are the fitted values.
  struct LigoParams {
    double tau_f = 1.6e-20;          // force noise time constant
    double omega_f = kTwoPi * 0.25;  // force noise cutoff
    double tau_x1 = 1e-50;           // sensing noise time constant 1
    double tau_x2 = 1e-48;           // sensing noise time constant 2
    double omega_x = kTwoPi * 1e4;   // sensing noise cutoff
    double alpha_f1 = 1.0;
    double alpha_f2 = 1.0;
    double alpha_x1 = 1.0;
    double alpha_x2 = 1.0;
    std::vector<ResonantMode> resonances;  // empty = off
  };

  NoiseModel() = default;

  /// No classical noise at all (vacuum-only runs).
  static NoiseModel none();
  /// Markovian: S_nF = 2 hbar M W_F^2, S_nX = 2 hbar / (M W_X^2).
  static NoiseModel white(double mass, double omega_f, double omega_x);
  /// Structural damping: S_nF = 2 hbar M W_F^3 / (|W|+W_c),
  /// S_nX = 2 hbar / (M W_X (|W|+W_c)); loss angle phi with cutoff W_c.
  static NoiseModel structural(double mass, double omega_f, double omega_x, double phi,
                               double omega_c);
  /// Rational aLIGO force/sensing models with the alpha knobs and optional
  /// resonant modes.
  static NoiseModel ligo(LigoParams p);
  /// Fitted aLIGO baseline: all alpha = 1, resonances off.
  static NoiseModel aligo_baseline();
  /// Seismic-free force noise S_nF = tau_ST / ((W/w_ST)^8 + 1); sensing stays
  /// the aLIGO sensing model.
  static NoiseModel suspension_only(double tau_st = 3.1e-35, double omega_st = kTwoPi * 1.9e3);
  static NoiseModel tabulated(TabulatedSpectrum force, TabulatedSpectrum sensing);

  Family family() const { return family_; }
  bool force_is_zero() const;
  bool sensing_is_zero() const;

  /// Uses the loss-angle complex spring instead of velocity damping.
  bool is_structural() const { return family_ == Family::Structural; }
  double phi() const { return phi_; }
  double omega_c() const { return omega_c_; }

  double force_spectrum(double omega) const;    // S_nF, N^2/Hz
  double sensing_spectrum(double omega) const;  // S_nX, m^2/Hz

  const LigoParams& ligo_params() const { return ligo_; }
  double tau_st() const { return tau_st_; }
  double omega_st() const { return omega_st_; }
  double mass() const { return mass_; }
  double omega_f() const { return omega_f_; }
  double omega_x() const { return omega_x_; }

  /// Scale knobs reachable by name from sweep configs. Throws ConfigError for
  /// a knob the family does not have.
  void set_knob(const std::string& name, double value);
  std::string family_name() const;

 private:
  Family family_ = Family::None;
  double mass_ = 1.0;
  double omega_f_ = 0.0, omega_x_ = 0.0;  // white/structural SQL-crossing frequencies
  double phi_ = 0.0, omega_c_ = 0.0;
  LigoParams ligo_;
  double tau_st_ = 0.0, omega_st_ = 0.0;
  TabulatedSpectrum force_table_, sensing_table_;
};

/// Kronecker-delta vacuum spectrum of the ingoing field quadratures;
/// i, j in {0, 1} for (u1, u2).
double vacuum_input_spectrum(int i, int j);

}  // namespace optent
