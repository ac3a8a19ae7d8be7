#pragma once

#include "skin/params.hpp"
#include "skin/permittivity.hpp"

#include <limits>

namespace skin {

// What the integration-by-parts form puts under the integral.
enum class IbpKernel {
  exact,       // (1/D)'' in full: an exact rewrite of the rescaled integral
  single_term, // eps_tr''/D^2 only, with the full eps_tr''
  pole_only,   // eps_tr''/D^2 with the pole-only eps_tr''; rejected, since it
               // is not integrable at q = 0
};

struct FieldOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-30; // in the units of the returned ratio (cm)
  int max_panels = 200000;
  int max_intervals = 400;
  // Truncation of the q axis (rescaled units). Infinite means "sum panels
  // until the extrapolated value settles".
  double q_max = std::numeric_limits<double>::infinity();
  bool accelerate = true;
  IbpKernel ibp_kernel = IbpKernel::exact;
  // The near region ends at near_factor * max(|Omega + i eps|, q_skin).
  double near_factor = 6.0;
  PermittivityOptions permittivity;
};

struct FieldValue {
  Complex value;             // E(x)/E'(0), cm
  double error_estimate = 0.0; // cm
  double tail_bound = 0.0;     // cm, bound on the part of the q axis beyond q_end
  double q_end = 0.0;          // rescaled q where summation stopped
  int intervals = 0;
  int panels = 0;
  bool roundoff_limited = false;
  bool accelerated = false;
};

// eps_tr(q) - b q^2.
Complex dispersion_denominator(double q, double Omega, double eps, double b,
                               const PermittivityOptions& opts = {});

// Field integral over the dimensionless wavenumber k1 = k l:
//   E(x)/E'(0) = (a l / pi) int exp(i k1 x/l) dk1 / (eps_tr(k1 eps) - a k1^2)
// Needs eps > 0.
FieldValue field_ratio_direct(double x_cm, const PlasmaParams& p, const FieldOptions& opts = {});

// Same integral after k1 = q/eps:
//   E(x)/E'(0) = (a l/(eps pi)) int exp(i q omega_p x/v_F) dq / (eps_tr(q) - b q^2)
// The prefactor a l/eps = b v_F/omega_p stays finite at eps = 0, where the
// collisionless permittivity is used and the denominator is checked for a
// real root on |q| < Omega.
FieldValue field_ratio_rescaled(double x_cm, const PlasmaParams& p, const FieldOptions& opts = {});

// Rescaled integral integrated by parts twice:
//   (1/X^2) int kernel(q) exp(i q X) dq,  X = omega_p x / v_F
// with the kernel chosen by opts.ibp_kernel. Needs x > 0 and eps > 0.
FieldValue field_ratio_ibp(double x_cm, const PlasmaParams& p, const FieldOptions& opts = {});

// (q + Omega) / (q^3 D(q)^2) with the collisionless D: the slowly varying factor
// multiplying 1/(q - Omega) in the far-field reduction.
Complex friedel_kernel(double q, const PlasmaParams& p);

// Throws DispersionRootError if the collisionless denominator, which is real
// for |q| < Omega, changes sign there.
void check_no_dispersion_root(const PlasmaParams& p);

} // namespace skin
