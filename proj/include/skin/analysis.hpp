#pragma once

#include "skin/profile.hpp"

#include <limits>
#include <vector>

namespace skin {

enum class CrossoverBranch { beyond_minimum };

// Root of g(x) = ln B - 2 ln x + omega_p x / c beyond the minimum of g at
// x_min = 2c/omega_p, i.e. where B/x^2 overtakes exp(-omega_p x / c) for good.
struct CrossoverResult {
  double x_star = 0.0; // cm
  double lo = 0.0;     // final bracket, cm
  double hi = 0.0;
  double g_residual = 0.0;
  CrossoverBranch branch = CrossoverBranch::beyond_minimum;
  int iterations = 0;
  double B = 0.0;     // cm^2
  double x_min = 0.0; // cm
};

// Throws NoCrossoverError when g(x_min) > 0.
CrossoverResult crossover(double Omega, const Material& m, double E0 = 1.0);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  int n_points = 0;
};

struct Peak {
  double x = 0.0;
  double value = 0.0; // |Re E| at the refined extremum
};

// Local maxima of |Re value| inside [x_lo, x_hi], refined by a parabola
// through the three neighbouring samples.
std::vector<Peak> local_peaks(const FieldProfile& prof, double x_lo, double x_hi);

// Least-squares fit of ln|peak| against ln x. Needs at least 4 peaks.
FitResult envelope_fit(const FieldProfile& prof, double x_lo, double x_hi);

struct Wavelength {
  double mean = 0.0;   // cm
  double stddev = 0.0; // cm
  int crossings = 0;
};

// Twice the mean spacing of linearly interpolated zero crossings of Re value.
// Needs at least 3 sign changes.
Wavelength wavelength_extract(const FieldProfile& prof, double x_lo = 0.0,
                              double x_hi = std::numeric_limits<double>::infinity());

// Fit of ln|value| against x in a window inside (0, 1.5 c/omega_p]; the slope
// estimates -omega_p/c. Rejects asymptotic profiles.
FitResult near_surface_fit(const FieldProfile& prof, double x_lo, double x_hi);

// Plain least squares y = slope x + intercept.
FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace skin
