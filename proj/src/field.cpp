#include "skin/field.hpp"

#include "skin/constants.hpp"
#include "skin/error.hpp"
#include "skin/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace skin {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

quad::FourierOptions fourier_options(const FieldOptions& o, double prefactor, double q_scale) {
  quad::FourierOptions f;
  f.rel_tol = o.rel_tol;
  f.abs_tol = o.abs_tol / std::abs(prefactor);
  f.max_panels = o.max_panels;
  f.max_intervals = o.max_intervals;
  f.q_max = o.q_max * q_scale;
  f.accelerate = o.accelerate;
  return f;
}

FieldValue to_field_value(const quad::FourierResult& r, double prefactor, double q_scale) {
  FieldValue v;
  v.value = prefactor * r.value;
  v.error_estimate = std::abs(prefactor) * r.error;
  v.tail_bound = std::abs(prefactor) * r.tail_bound;
  v.q_end = r.q_end / q_scale;
  v.intervals = r.intervals;
  v.panels = r.panels;
  v.roundoff_limited = r.roundoff_limited;
  v.accelerated = r.accelerated;
  if (!std::isfinite(v.value.real()) || !std::isfinite(v.value.imag()))
    throw NumericalError("field integral produced a non-finite value");
  return v;
}

// Wavenumber where b q^2 overtakes |eps_tr(0)|: width of the skin-law
// Lorentzian in rescaled q.
double skin_wavenumber(const PlasmaParams& p) {
  const Complex z(p.Omega, p.eps);
  const double d0 = std::abs(1.0 - 1.0 / (p.Omega * z));
  return std::sqrt(std::max(d0, 1.0) / p.b);
}

double near_end(const PlasmaParams& p, const FieldOptions& o) {
  const double z = std::hypot(p.Omega, p.eps);
  return o.near_factor * std::max(z, skin_wavenumber(p));
}

// Integral of 1/|b q^2 - 2| over [Q, inf) bounds the tail of |1/D|.
double inverse_quadratic_tail(double Q, double b) {
  const double bq2 = b * Q * Q;
  if (bq2 <= 4.0)
    return inf;
  return 1.0 / (b * Q) * bq2 / (bq2 - 2.0);
}

void check_x(double x_cm) {
  if (!(x_cm >= 0.0) || !std::isfinite(x_cm))
    throw DomainError("x must be finite and non-negative");
}

void check_params(const PlasmaParams& p) {
  if (!(p.Omega > 0.0) || !(p.eps >= 0.0) || !(p.b > 0.0))
    throw DomainError("plasma parameters are not initialised");
}

} // namespace

Complex dispersion_denominator(double q, double Omega, double eps, double b,
                               const PermittivityOptions& opts) {
  return eps_tr(q, Omega, eps, opts) - b * q * q;
}

void check_no_dispersion_root(const PlasmaParams& p) {
  constexpr int samples = 512;
  auto real_d = [&](double q) {
    return dispersion_denominator(q, p.Omega, 0.0, p.b).real();
  };
  double q_prev = p.Omega / samples * 1e-3;
  double d_prev = real_d(q_prev);
  for (int i = 1; i < samples; ++i) {
    const double q = p.Omega * i / samples;
    const double d = real_d(q);
    if (d == 0.0)
      throw DispersionRootError(q);
    if ((d > 0.0) != (d_prev > 0.0)) {
      double lo = q_prev, hi = q;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((real_d(mid) > 0.0) == (d_prev > 0.0))
          lo = mid;
        else
          hi = mid;
      }
      throw DispersionRootError(0.5 * (lo + hi));
    }
    q_prev = q;
    d_prev = d;
  }
}

FieldValue field_ratio_rescaled(double x_cm, const PlasmaParams& p, const FieldOptions& opts) {
  check_x(x_cm);
  check_params(p);
  if (p.collisionless())
    check_no_dispersion_root(p);

  const double X = p.phase(x_cm);
  // a l / eps, written so that eps = 0 is harmless. Two for the half line.
  const double prefactor = 2.0 * p.b * p.v_F() / (cgs::pi * p.omega_p());
  auto h = [&](double q) -> Complex {
    return 1.0 / dispersion_denominator(q, p.Omega, p.eps, p.b, opts.permittivity);
  };
  const std::array<double, 1> breaks{p.Omega};
  auto tail = [&](double Q) { return inverse_quadratic_tail(Q, p.b); };
  const auto r = quad::cosine_transform(h, X, breaks, near_end(p, opts), tail,
                                        fourier_options(opts, prefactor, 1.0));
  return to_field_value(r, prefactor, 1.0);
}

FieldValue field_ratio_direct(double x_cm, const PlasmaParams& p, const FieldOptions& opts) {
  check_x(x_cm);
  check_params(p);
  if (!(p.eps > 0.0))
    throw DomainError("direct form needs eps > 0; use the rescaled form or the asymptotics");

  const double x1 = x_cm / p.l;
  const double prefactor = 2.0 * p.a * p.l / cgs::pi;
  auto h = [&](double k1) -> Complex {
    return 1.0 / (eps_tr(k1 * p.eps, p.Omega, p.eps, opts.permittivity) - p.a * k1 * k1);
  };
  const double scale = 1.0 / p.eps; // k1 per unit rescaled q
  const std::array<double, 1> breaks{p.Omega * scale};
  auto tail = [&](double K) { return inverse_quadratic_tail(K, p.a); };
  const auto r = quad::cosine_transform(h, x1, breaks, near_end(p, opts) * scale, tail,
                                        fourier_options(opts, prefactor, scale));
  return to_field_value(r, prefactor, scale);
}

FieldValue field_ratio_ibp(double x_cm, const PlasmaParams& p, const FieldOptions& opts) {
  check_params(p);
  if (!(x_cm > 0.0) || !std::isfinite(x_cm))
    throw DomainError("integration-by-parts form needs x > 0");
  if (!(p.eps > 0.0))
    throw DomainError("integration-by-parts form needs eps > 0");

  const IbpKernel kind = opts.ibp_kernel;
  if (kind == IbpKernel::pole_only)
    throw DomainError("pole-only eps_tr'' behaves as -3/(Omega z q^2) at q = 0; its field "
                      "integral diverges there and is usable only through its pole terms");

  const double X = p.phase(x_cm);
  const auto& po = opts.permittivity;
  // exact: int e^{iqX} (1/D) = -(1/X^2) int e^{iqX} (1/D)''.
  const double sign = kind == IbpKernel::exact ? -1.0 : 1.0;
  const double prefactor = sign * 2.0 * p.b * p.v_F() / (cgs::pi * p.omega_p() * X * X);

  auto h = [&](double q) -> Complex {
    const Complex D = dispersion_denominator(q, p.Omega, p.eps, p.b, po);
    switch (kind) {
    case IbpKernel::exact: {
      const Complex D1 = d_eps_dq(q, p.Omega, p.eps, po) - 2.0 * p.b * q;
      const Complex D2 = d2_eps_dq2(q, p.Omega, p.eps, po) - 2.0 * p.b;
      return (2.0 * D1 * D1 / D - D2) / (D * D);
    }
    case IbpKernel::single_term:
      return d2_eps_dq2(q, p.Omega, p.eps, po) / (D * D);
    case IbpKernel::pole_only:
      return d2_eps_near_singularity(q, p.Omega, p.eps) / (D * D);
    }
    return 0.0;
  };

  // The second derivative carries a pole of width eps at q = Omega.
  std::vector<double> breaks{p.Omega};
  for (double k : {1.0, 10.0, 100.0}) {
    if (p.Omega - k * p.eps > 0.0)
      breaks.push_back(p.Omega - k * p.eps);
    breaks.push_back(p.Omega + k * p.eps);
  }
  // |(1/D)''| ~ 6/(b q^4); doubled for the eps_tr'' terms.
  auto tail = [&](double Q) { return 4.0 / (p.b * Q * Q * Q); };
  const auto r = quad::cosine_transform(h, X, breaks, near_end(p, opts), tail,
                                        fourier_options(opts, prefactor, 1.0));
  return to_field_value(r, prefactor, 1.0);
}

Complex friedel_kernel(double q, const PlasmaParams& p) {
  // At |q| = Omega the logarithm is multiplied by zero; use the limit.
  const Complex D = std::abs(q) == p.Omega
                        ? Complex(1.0 - 1.5 / (p.Omega * p.Omega) - p.b * p.Omega * p.Omega)
                        : dispersion_denominator(q, p.Omega, 0.0, p.b);
  return (q + p.Omega) / (q * q * q * D * D);
}

} // namespace skin
