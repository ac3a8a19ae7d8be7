#pragma once

#include <complex>
#include <span>
#include <vector>

namespace skin {

using Complex = std::complex<double>;

// Transversal permittivity of a degenerate electron plasma in the variables
// q = k l eps (dimensionless wavenumber), Omega = omega/omega_p and
// eps = nu/omega_p, with z = Omega + i eps:
//
//   eps_tr = 1 - 3/(4 Omega q^3) [2 z q + (z^2 - q^2) Log((z - q)/(z + q))]
//
// eps = 0 is taken as the limit eps -> 0+: the logarithm picks up +i pi for
// q > Omega and -i pi for q < -Omega (Landau damping), and is real between.
//
// For |q/z| below `series_threshold` the bracket cancels to O(q^3) and the
// value comes from the small-q expansion instead.
struct PermittivityOptions {
  double series_threshold = 0.1;
  // Derivatives cancel two more orders than the value itself.
  double derivative_series_threshold = 0.3;
};

Complex eps_tr(double q, double Omega, double eps, const PermittivityOptions& opts = {});

struct SeriesValue {
  Complex value;
  double error_bound = 0.0; // magnitude of the last included term
  int terms = 0;
};

// Partial sum 1 - 3/(Omega z) sum_{k=1..n_terms} (q/z)^(2k-2) / (4k^2 - 1).
// Requires |q| < |z|; q = 0 is allowed.
SeriesValue small_q_series(double q, double Omega, double eps, int n_terms);

// Analytic d eps_tr / dq.
Complex d_eps_dq(double q, double Omega, double eps, const PermittivityOptions& opts = {});

// Analytic d^2 eps_tr / dq^2 (every term).
Complex d2_eps_dq2(double q, double Omega, double eps, const PermittivityOptions& opts = {});

// Only the pole terms that dominate near the Kohn point q = +-Omega:
//   -3/(4 Omega q^3) [(z + q)/(z - q) - (z - q)/(z + q)]
Complex d2_eps_near_singularity(double q, double Omega, double eps);

struct KohnGrid {
  double q_min = 0.0;
  double q_max = 0.0;
  int n_points = 0;
  double coarse_step = 0.0;
  double refined_step = 0.0;
  int rounds = 0;
  int skipped = 0; // samples that landed exactly on a collisionless singularity
};

struct KohnScanResult {
  double q_star = 0.0;
  double max_abs_derivative = 0.0;
  KohnGrid grid;
};

// Locates the maximum of |d eps_tr/dq| on [q_min, q_max]: uniform grid, then
// three rounds of 10x finer grids around the running argmax.
KohnScanResult kohn_scan(double Omega, double eps, double q_min, double q_max, int n_points);

// |d eps_tr/dq| on a grid; NaN where the sample hits a singular point.
// OpenMP-parallel; derivative_magnitudes_reference is the serial twin.
std::vector<double> derivative_magnitudes(std::span<const double> qs, double Omega, double eps);
std::vector<double> derivative_magnitudes_reference(std::span<const double> qs, double Omega,
                                                    double eps);

} // namespace skin
