#include "skin/asymptotics.hpp"

#include "skin/constants.hpp"
#include "skin/error.hpp"

#include <cmath>

namespace skin {

namespace {

void check_omega(double Omega) {
  if (!(Omega > 0.0) || !std::isfinite(Omega))
    throw DomainError("Omega must be positive");
}

// 3/2 + Omega^2 (c^2/v_F^2 - 1)
double bracket(double Omega, const Material& m) {
  const double r = cgs::c / m.v_F;
  return 1.5 + Omega * Omega * (r * r - 1.0);
}

} // namespace

double f_of_Omega(double Omega, const Material& m) {
  check_omega(Omega);
  const double br = bracket(Omega, m);
  return 2.0 * Omega * Omega / (br * br);
}

double f_of_Omega_dimensional(double omega, const Material& m) {
  if (!(omega > 0.0))
    throw DomainError("omega must be positive");
  const double wp2 = m.omega_p * m.omega_p;
  const double w2 = omega * omega;
  const double r = cgs::c / m.v_F;
  const double br = 1.5 * wp2 + r * r * w2 - w2;
  return 2.0 * w2 * wp2 / (br * br);
}

double amplitude_A(double Omega, const Material& m, AmplitudeForm form) {
  check_omega(Omega);
  const double c = cgs::c;
  const double vf = m.v_F;
  const double wp3 = m.omega_p * m.omega_p * m.omega_p;
  switch (form) {
  case AmplitudeForm::exact8: {
    const double br = bracket(Omega, m);
    return 3.0 * c * c * vf / (wp3 * br * br);
  }
  case AmplitudeForm::nonrel9: {
    const double s = c * Omega / vf;
    const double br = 1.5 + s * s;
    return 3.0 * c * c * vf / (wp3 * br * br);
  }
  case AmplitudeForm::low:
    return 4.0 * c * c * vf / (3.0 * wp3);
  case AmplitudeForm::high: {
    const double o2 = Omega * Omega;
    return 3.0 * std::pow(vf, 5) / (c * c * wp3 * o2 * o2);
  }
  }
  throw DomainError("unknown amplitude form");
}

double amplitude_B(double Omega, const Material& m, double E0) {
  check_omega(Omega);
  const double br = bracket(Omega, m);
  return 3.0 * cgs::c * m.v_F * E0 / (m.omega_p * m.omega_p * br * br);
}

AsymptoticCoefficients asymptotic_coefficients(double Omega, const Material& m) {
  AsymptoticCoefficients k;
  k.A = amplitude_A(Omega, m);
  k.B = amplitude_B(Omega, m);
  k.f_Omega = f_of_Omega(Omega, m);
  k.wavenumber = Omega * m.omega_p / m.v_F;
  return k;
}

double asymptotic_field(double x_cm, double Omega, const Material& m, Normalization n) {
  if (!(x_cm > 0.0) || !std::isfinite(x_cm))
    throw DomainError("asymptotic field needs x > 0");
  check_omega(Omega);
  const double s = std::sin(Omega * m.omega_p * x_cm / m.v_F);
  if (n == Normalization::per_Eprime0)
    return -amplitude_A(Omega, m) / (x_cm * x_cm) * s;
  return amplitude_B(Omega, m) / (x_cm * x_cm) * s;
}

} // namespace skin
