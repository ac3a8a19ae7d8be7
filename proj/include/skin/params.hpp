#pragma once

#include "skin/materials.hpp"

namespace skin {

// Dimensionless regime of a skin-effect problem together with the
// dimensional quantities it was built from. eps = 0 is the collisionless
// limit: a = 0 and l, tau are +inf.
struct PlasmaParams {
  double Omega = 0.0; // omega / omega_p
  double eps = 0.0;   // nu / omega_p
  double a = 0.0;     // (c eps / (v_F Omega))^2
  double b = 0.0;     // (c / (v_F Omega))^2
  double l = 0.0;     // mean free path v_F / nu, cm
  double delta = 0.0; // c / omega_p, cm
  double omega = 0.0; // rad/s
  double nu = 0.0;    // rad/s
  double tau = 0.0;   // 1/nu, s
  Material material;

  bool collisionless() const { return eps == 0.0; }
  double omega_p() const { return material.omega_p; }
  double v_F() const { return material.v_F; }
  // Phase variable of the rescaled integral, omega_p x / v_F.
  double phase(double x_cm) const { return material.omega_p * x_cm / material.v_F; }
};

PlasmaParams to_dimensionless(double omega, double nu, const Material& material);

// Convenience for callers that think in Omega and eps directly.
PlasmaParams from_dimensionless(double Omega, double eps, const Material& material);

} // namespace skin
