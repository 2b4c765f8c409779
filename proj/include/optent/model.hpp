#pragma once

#include "optent/constants.hpp"

namespace optent {

/// Optomechanical coupling from circulating power:
/// G = sqrt(2 w0 Pc / (hbar L c)) with w0 = 2 pi c / lambda.
/// Throws std::domain_error on non-positive inputs.
double coupling_from_power(double circ_power, double arm_length, double wavelength);

/// Characteristic interaction frequency Omega_q = 2 G sqrt(hbar / (M gamma)).
double interaction_frequency(double coupling, double mass, double cavity_decay);

/// Free-mass standard quantum limit 2 hbar / (M Omega^2), m^2/Hz. Even in Omega.
double sql_free_mass(double omega, double mass);

/// Physical constants of the reduced single-cavity model. SI units throughout;
/// mechanical quadratures are x sqrt(M w_m / hbar) and p / sqrt(hbar M w_m),
/// field quadratures are vacuum-normalized (one-sided vacuum spectrum = 1).
struct SystemParams {
  double mass = 0.0;          // kg
  double mech_freq = 0.0;     // rad/s
  double mech_damping = 0.0;  // rad/s (>= 0; structural runs use 0)
  double cavity_decay = 0.0;  // rad/s
  double arm_length = 0.0;    // m
  double circ_power = 0.0;    // W
  double wavelength = 0.0;    // m
  double coupling = 0.0;      // rad/(s m); 0 means fully decoupled
  double detuning = 0.0;      // must stay 0: resonant, unconditionally stable case

  /// Fitted reduced-cavity parameters of the aLIGO antisymmetric mode,
  /// coupling derived from the circulating power.
  static SystemParams aligo();

  /// Free-mass study parameters: interaction frequency given directly, the
  /// cavity already eliminated. Coupling is back-derived for consistency.
  static SystemParams free_mass(double omega_q, double mech_freq, double mech_damping,
                                double mass = 1.0);

  /// Throws std::domain_error on violated invariants (including detuning != 0).
  void validate() const;

  double omega_q() const { return interaction_frequency(coupling, mass, cavity_decay); }
  double alpha() const;  // Omega_q sqrt(M / hbar), readout gain of the eliminated cavity
  double x_zpf() const;  // sqrt(hbar / (M w_m))
};

}  // namespace optent
