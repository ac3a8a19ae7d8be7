#include "skin/params.hpp"

#include "skin/constants.hpp"
#include "skin/error.hpp"

#include <cmath>
#include <limits>

namespace skin {

PlasmaParams to_dimensionless(double omega, double nu, const Material& material) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("omega must be positive");
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw DomainError("nu must be non-negative");
  if (!(material.omega_p > 0.0) || !(material.v_F > 0.0))
    throw DomainError("material '" + material.name + "' is not initialised");

  PlasmaParams p;
  p.material = material;
  p.omega = omega;
  p.nu = nu;
  p.Omega = omega / material.omega_p;
  p.eps = nu / material.omega_p;
  const double r = cgs::c / (material.v_F * p.Omega);
  p.b = r * r;
  p.a = p.b * p.eps * p.eps;
  p.delta = cgs::c / material.omega_p;
  constexpr double inf = std::numeric_limits<double>::infinity();
  p.tau = nu > 0.0 ? 1.0 / nu : inf;
  p.l = nu > 0.0 ? material.v_F / nu : inf;
  return p;
}

PlasmaParams from_dimensionless(double Omega, double eps, const Material& material) {
  if (!(Omega > 0.0))
    throw DomainError("Omega must be positive");
  if (!(eps >= 0.0))
    throw DomainError("eps must be non-negative");
  PlasmaParams p = to_dimensionless(Omega * material.omega_p, eps * material.omega_p, material);
  // Keep the caller's exact dimensionless values rather than the round trip.
  p.Omega = Omega;
  p.eps = eps;
  const double r = cgs::c / (material.v_F * Omega);
  p.b = r * r;
  p.a = p.b * eps * eps;
  return p;
}

} // namespace skin
