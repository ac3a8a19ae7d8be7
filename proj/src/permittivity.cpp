#include "skin/permittivity.hpp"

#include "skin/constants.hpp"
#include "skin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skin {

namespace {

constexpr int max_series_terms = 200;

void check_args(double q, double Omega, double eps) {
  if (!std::isfinite(q) || !std::isfinite(Omega) || !std::isfinite(eps))
    throw DomainError("permittivity arguments must be finite");
  if (!(Omega > 0.0))
    throw DomainError("Omega must be positive");
  if (!(eps >= 0.0))
    throw DomainError("eps must be non-negative");
}

void check_closed_form(double q, double Omega, double eps) {
  check_args(q, Omega, eps);
  if (q == 0.0)
    throw DomainError("q = 0 is outside the closed form; use small_q_series");
  if (eps == 0.0 && std::abs(q) == Omega)
    throw SingularPointError("collisionless permittivity is singular at |q| = Omega");
}

Complex finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NumericalError(std::string(what) + " produced a non-finite value");
  return v;
}

// Log((z - q)/(z + q)) on the branch reached from Im z > 0.
Complex log_ratio(double q, double Omega, double eps) {
  if (eps > 0.0) {
    const Complex z(Omega, eps);
    return std::log((z - q) / (z + q));
  }
  const double re = std::log(std::abs((Omega - q) / (Omega + q)));
  const double im = q > Omega ? cgs::pi : (q < -Omega ? -cgs::pi : 0.0);
  return {re, im};
}

// sum_{k>=k0} coef(k) t^(2k - shift), stopping once terms drop below
// machine precision relative to the running sum.
template <class Coef>
Complex converged_series(Complex t, int k0, int shift, Coef coef) {
  const Complex t2 = t * t;
  Complex power = std::pow(t, 2 * k0 - shift);
  Complex sum = 0.0;
  for (int k = k0; k < k0 + max_series_terms; ++k) {
    const Complex term = coef(k) * power;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > k0 + 1)
      return sum;
    power *= t2;
  }
  throw DivergentSeriesError("small-q series did not converge");
}

Complex series_value(double q, Complex z, double Omega) {
  const Complex t = q / z;
  const Complex s = converged_series(t, 1, 2, [](int k) { return 1.0 / (4.0 * k * k - 1.0); });
  return 1.0 - 3.0 / (Omega * z) * s;
}

Complex series_first(double q, Complex z, double Omega) {
  const Complex t = q / z;
  const Complex s = converged_series(
      t, 2, 3, [](int k) { return (2.0 * k - 2.0) / (4.0 * k * k - 1.0); });
  return -3.0 / (Omega * z * z) * s;
}

Complex series_second(double q, Complex z, double Omega) {
  const Complex t = q / z;
  const Complex s = converged_series(
      t, 2, 4, [](int k) { return (2.0 * k - 2.0) * (2.0 * k - 3.0) / (4.0 * k * k - 1.0); });
  return -3.0 / (Omega * z * z * z) * s;
}

} // namespace

Complex eps_tr(double q, double Omega, double eps, const PermittivityOptions& opts) {
  check_closed_form(q, Omega, eps);
  const Complex z(Omega, eps);
  if (std::abs(q) < opts.series_threshold * std::abs(z))
    return finite(series_value(q, z, Omega), "eps_tr");
  const Complex L = log_ratio(q, Omega, eps);
  const Complex bracket = 2.0 * z * q + (z * z - q * q) * L;
  return finite(1.0 - 3.0 / (4.0 * Omega * q * q * q) * bracket, "eps_tr");
}

SeriesValue small_q_series(double q, double Omega, double eps, int n_terms) {
  check_args(q, Omega, eps);
  if (n_terms < 1)
    throw DomainError("small_q_series needs at least one term");
  const Complex z(Omega, eps);
  if (std::abs(q) >= std::abs(z))
    throw DivergentSeriesError("small-q series diverges for |q| >= |Omega + i eps|");

  const Complex t2 = (q / z) * (q / z);
  const Complex scale = 3.0 / (Omega * z);
  Complex power = 1.0;
  Complex sum = 0.0;
  double last = 0.0;
  for (int k = 1; k <= n_terms; ++k) {
    const Complex term = power / (4.0 * k * k - 1.0);
    sum += term;
    last = std::abs(scale * term);
    power *= t2;
  }
  return {finite(1.0 - scale * sum, "small_q_series"), last, n_terms};
}

Complex d_eps_dq(double q, double Omega, double eps, const PermittivityOptions& opts) {
  check_closed_form(q, Omega, eps);
  const Complex z(Omega, eps);
  if (std::abs(q) < opts.derivative_series_threshold * std::abs(z))
    return finite(series_first(q, z, Omega), "d_eps_dq");
  const Complex L = log_ratio(q, Omega, eps);
  const Complex F = 2.0 * z * q + (z * z - q * q) * L;
  const double q2 = q * q;
  return finite(3.0 / (4.0 * Omega) * (2.0 * L / q2 + 3.0 * F / (q2 * q2)), "d_eps_dq");
}

Complex d2_eps_dq2(double q, double Omega, double eps, const PermittivityOptions& opts) {
  check_closed_form(q, Omega, eps);
  const Complex z(Omega, eps);
  if (std::abs(q) < opts.derivative_series_threshold * std::abs(z))
    return finite(series_second(q, z, Omega), "d2_eps_dq2");
  const Complex L = log_ratio(q, Omega, eps);
  const Complex F = 2.0 * z * q + (z * z - q * q) * L;
  const Complex F1 = -2.0 * q * L;
  const Complex F2 = -2.0 * L + 4.0 * q * z / (z * z - q * q);
  const double q3 = q * q * q;
  return finite(-3.0 / (4.0 * Omega) * (F2 / q3 - 6.0 * F1 / (q3 * q) + 12.0 * F / (q3 * q * q)),
                "d2_eps_dq2");
}

Complex d2_eps_near_singularity(double q, double Omega, double eps) {
  check_closed_form(q, Omega, eps);
  const Complex z(Omega, eps);
  const Complex bracket = (z + q) / (z - q) - (z - q) / (z + q);
  return finite(-3.0 / (4.0 * Omega * q * q * q) * bracket, "d2_eps_near_singularity");
}

namespace {

double abs_derivative_or_nan(double q, double Omega, double eps) {
  try {
    return std::abs(d_eps_dq(q, Omega, eps));
  } catch (const SingularPointError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct Argmax {
  double q = 0.0;
  double value = -1.0;
  int skipped = 0;
};

Argmax scan_grid(double lo, double step, int n, double Omega, double eps) {
  std::vector<double> qs(n);
  for (int i = 0; i < n; ++i)
    qs[i] = lo + step * i;
  const auto values = derivative_magnitudes(qs, Omega, eps);
  Argmax best;
  for (int i = 0; i < n; ++i) {
    if (std::isnan(values[i])) {
      ++best.skipped;
      continue;
    }
    if (values[i] > best.value) {
      best.value = values[i];
      best.q = qs[i];
    }
  }
  return best;
}

} // namespace

std::vector<double> derivative_magnitudes(std::span<const double> qs, double Omega, double eps) {
  std::vector<double> out(qs.size());
  const auto n = static_cast<long>(qs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    out[i] = abs_derivative_or_nan(qs[i], Omega, eps);
  return out;
}

std::vector<double> derivative_magnitudes_reference(std::span<const double> qs, double Omega,
                                                    double eps) {
  std::vector<double> out;
  out.reserve(qs.size());
  for (double q : qs)
    out.push_back(abs_derivative_or_nan(q, Omega, eps));
  return out;
}

KohnScanResult kohn_scan(double Omega, double eps, double q_min, double q_max, int n_points) {
  check_args(1.0, Omega, eps);
  if (!(q_min > 0.0) || !(q_max > q_min))
    throw DomainError("kohn_scan needs 0 < q_min < q_max");
  if (n_points < 10)
    throw DomainError("kohn_scan needs at least 10 grid points");

  KohnScanResult r;
  r.grid.q_min = q_min;
  r.grid.q_max = q_max;
  r.grid.n_points = n_points;
  r.grid.coarse_step = (q_max - q_min) / (n_points - 1);

  Argmax best = scan_grid(q_min, r.grid.coarse_step, n_points, Omega, eps);
  int skipped = best.skipped;
  if (best.value < 0.0)
    throw NumericalError("kohn_scan: every grid sample was singular");

  double step = r.grid.coarse_step;
  constexpr int rounds = 3;
  for (int round = 0; round < rounds; ++round) {
    const double lo = std::max(q_min, best.q - step);
    const double hi = std::min(q_max, best.q + step);
    step /= 10.0;
    const int n = static_cast<int>(std::lround((hi - lo) / step)) + 1;
    const Argmax refined = scan_grid(lo, step, n, Omega, eps);
    skipped += refined.skipped;
    if (refined.value > best.value)
      best = refined;
  }

  r.q_star = best.q;
  r.max_abs_derivative = best.value;
  r.grid.refined_step = step;
  r.grid.rounds = rounds;
  r.grid.skipped = skipped;
  return r;
}

} // namespace skin
