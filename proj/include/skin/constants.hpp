#pragma once

// CODATA 2018 values in CGS-Gaussian units.
namespace skin::cgs {

inline constexpr double c = 2.99792458e10;             // cm/s (exact)
inline constexpr double e = 4.803204712570263e-10;     // statC, 1.602176634e-19 C * c/10
inline constexpr double m_e = 9.1093837015e-28;        // g
inline constexpr double hbar = 1.054571817e-27;        // erg s

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace skin::cgs

namespace skin::si {

inline constexpr double cm = 1e-2;  // m per cm
inline constexpr double cm3 = 1e-6; // m^3 per cm^3

} // namespace skin::si
