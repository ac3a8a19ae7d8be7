#include "skin/analysis.hpp"

#include "skin/constants.hpp"
#include "skin/error.hpp"

#include <algorithm>
#include <cmath>

namespace skin {

CrossoverResult crossover(double Omega, const Material& m, double E0) {
  if (!(E0 > 0.0))
    throw DomainError("crossover needs E0 > 0");
  CrossoverResult r;
  r.B = amplitude_B(Omega, m, E0);
  const double k = m.omega_p / cgs::c;
  const double lnB = std::log(r.B);
  auto g = [&](double x) { return lnB - 2.0 * std::log(x) + k * x; };

  r.x_min = 2.0 / k;
  const double g_min = g(r.x_min);
  if (g_min > 0.0)
    throw NoCrossoverError(g_min);

  double lo = r.x_min;
  double hi = 2.0 * r.x_min;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6 * r.x_min)
      throw NumericalError("crossover: root not bracketed below 1e6 x_min");
  }
  int it = 0;
  while (hi - lo > 1e-12 * hi && it < 200) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
    ++it;
  }
  r.lo = lo;
  r.hi = hi;
  r.x_star = 0.5 * (lo + hi);
  r.g_residual = std::abs(g(r.x_star));
  r.iterations = it;
  return r;
}

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw DomainError("linear fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw DomainError("linear fit: abscissae are all equal");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  f.n_points = static_cast<int>(n);
  f.x_lo = *std::min_element(x.begin(), x.end());
  f.x_hi = *std::max_element(x.begin(), x.end());
  return f;
}

std::vector<Peak> local_peaks(const FieldProfile& prof, double x_lo, double x_hi) {
  std::vector<Peak> peaks;
  const auto& xs = prof.xs;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (xs[i] < x_lo || xs[i] > x_hi)
      continue;
    const double a = std::abs(prof.values[i - 1].real());
    const double b = std::abs(prof.values[i].real());
    const double c = std::abs(prof.values[i + 1].real());
    if (!(b > a && b >= c))
      continue;
    const double h1 = xs[i] - xs[i - 1];
    const double h2 = xs[i + 1] - xs[i];
    const double curv = ((c - b) / h2 + (a - b) / h1) / (h1 + h2);
    const double slope = (c - b) / h2 - curv * h2;
    Peak p{xs[i], b};
    if (curv < 0.0) {
      const double dx = std::clamp(-slope / (2.0 * curv), -h1, h2);
      p.x = xs[i] + dx;
      p.value = b + slope * dx + curv * dx * dx;
    }
    peaks.push_back(p);
  }
  return peaks;
}

FitResult envelope_fit(const FieldProfile& prof, double x_lo, double x_hi) {
  const auto peaks = local_peaks(prof, x_lo, x_hi);
  if (peaks.size() < 4)
    throw NumericalError("envelope fit: found " + std::to_string(peaks.size()) +
                         " extrema in the window, need at least 4");
  std::vector<double> lx, ly;
  for (const auto& p : peaks) {
    lx.push_back(std::log(p.x));
    ly.push_back(std::log(p.value));
  }
  FitResult f = linear_fit(lx, ly);
  f.x_lo = x_lo;
  f.x_hi = x_hi;
  return f;
}

Wavelength wavelength_extract(const FieldProfile& prof, double x_lo, double x_hi) {
  std::vector<double> zeros;
  const auto& xs = prof.xs;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] < x_lo || xs[i + 1] > x_hi)
      continue;
    const double a = prof.values[i].real();
    const double b = prof.values[i + 1].real();
    if (std::isnan(a) || std::isnan(b))
      continue;
    if (a == 0.0) {
      if (i > 0 && (prof.values[i - 1].real() > 0.0) != (b > 0.0))
        zeros.push_back(xs[i]);
      continue;
    }
    if ((a > 0.0) != (b > 0.0) && b != 0.0)
      zeros.push_back(xs[i] - a * (xs[i + 1] - xs[i]) / (b - a));
  }
  if (zeros.size() < 3)
    throw NumericalError("wavelength: found " + std::to_string(zeros.size()) +
                         " sign changes, need at least 3");
  std::vector<double> gaps;
  for (std::size_t i = 1; i < zeros.size(); ++i)
    gaps.push_back(zeros[i] - zeros[i - 1]);
  double mean = 0.0;
  for (double g : gaps)
    mean += g;
  mean /= gaps.size();
  double var = 0.0;
  for (double g : gaps)
    var += (g - mean) * (g - mean);
  var /= gaps.size();
  return {2.0 * mean, 2.0 * std::sqrt(var), static_cast<int>(zeros.size())};
}

FitResult near_surface_fit(const FieldProfile& prof, double x_lo, double x_hi) {
  if (prof.method == Method::asymptotic)
    throw DomainError("near-surface fit needs a numerically integrated profile");
  const double delta = prof.params.delta;
  if (!(x_lo > 0.0) || !(x_hi > x_lo) || x_hi > 1.5 * delta * (1.0 + 1e-12))
    throw DomainError("near-surface window must lie inside (0, 1.5 c/omega_p]");
  if (prof.xs.empty() || x_lo < prof.xs.front() || x_hi > prof.xs.back())
    throw DomainError("near-surface window lies outside the profile");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < prof.xs.size(); ++i) {
    if (prof.xs[i] < x_lo || prof.xs[i] > x_hi || !prof.diagnostics[i].ok)
      continue;
    x.push_back(prof.xs[i]);
    y.push_back(std::log(std::abs(prof.values[i])));
  }
  if (x.size() < 3)
    throw DomainError("near-surface window holds fewer than 3 samples");
  FitResult f = linear_fit(x, y);
  f.x_lo = x_lo;
  f.x_hi = x_hi;
  return f;
}

} // namespace skin
