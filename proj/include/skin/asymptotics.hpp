#pragma once

#include "skin/materials.hpp"

namespace skin {

// Far-field (Friedel) asymptotics of the penetrating field:
//   E(x)/E'(0) = -(A/x^2) sin(Omega omega_p x / v_F)
//   E(x)/E(0)  =  (B/x^2) sin(Omega omega_p x / v_F),  B = (omega_p/c) A

enum class AmplitudeForm {
  exact8,  // 3c^2 v_F / (omega_p^3 [Omega^2 (c^2/v_F^2 - 1) + 3/2]^2)
  nonrel9, // same with the -Omega^2 term dropped (v_F << c)
  low,     // Omega << v_F/c:  4 c^2 v_F / (3 omega_p^3)
  high,    // Omega >> v_F/c:  3 v_F^5 / (c^2 omega_p^3 Omega^4)
};

enum class Normalization {
  per_Eprime0, // E(x)/E'(0), cm
  per_E0,      // E(x)/E(0), dimensionless
};

// f(Omega) = 2 Omega^2 / [3/2 + (c Omega / v_F)^2 - Omega^2]^2
double f_of_Omega(double Omega, const Material& m);
// Same quantity from omega directly: 2 w^2 w_p^2 / [3/2 w_p^2 + (c/v_F)^2 w^2 - w^2]^2
double f_of_Omega_dimensional(double omega, const Material& m);

double amplitude_A(double Omega, const Material& m, AmplitudeForm form = AmplitudeForm::exact8);

// 3 c v_F E0 / (omega_p^2 [3/2 + (c Omega/v_F)^2 - Omega^2]^2), cm^2 per unit E0.
double amplitude_B(double Omega, const Material& m, double E0 = 1.0);

struct AsymptoticCoefficients {
  double A = 0.0;          // cm^3
  double B = 0.0;          // cm^2 (E0 = 1)
  double f_Omega = 0.0;
  double wavenumber = 0.0; // Omega omega_p / v_F, 1/cm
};

AsymptoticCoefficients asymptotic_coefficients(double Omega, const Material& m);

// Throws DomainError for x <= 0.
double asymptotic_field(double x_cm, double Omega, const Material& m, Normalization n);

} // namespace skin
