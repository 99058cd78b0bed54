#pragma once

namespace optomech {

/// Fundamental constants in SI units.
///
/// Values are the CODATA 2018 recommended set (NIST SP 961, May 2019);
/// k_B and c are exact in the 2019 SI, hbar = h / 2π truncated to 10 digits.
struct PhysicalConstants {
  const double hbar = 1.054571817e-34;  // J s
  const double k_B = 1.380649e-23;      // J / K
  const double c = 299792458.0;         // m / s
};

inline constexpr PhysicalConstants kCodata2018{};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace optomech
