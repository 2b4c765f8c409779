#pragma once

namespace optent {

/// Physical constants, SI units.
inline constexpr double kHbar = 1.054571817e-34;  // J s
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace optent
