#pragma once

#include <stdexcept>
#include <string>

namespace skin {

// Base for every error raised by the library. The CLI prints what() verbatim.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

// eps = 0 evaluated exactly on the Kohn point |q| = Omega.
class SingularPointError : public DomainError {
public:
  using DomainError::DomainError;
};

class DivergentSeriesError : public DomainError {
public:
  using DomainError::DomainError;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

// Quadrature gave up. Carries what it had when it stopped.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double estimate_error, int intervals, int panels)
      : Error(what), error_estimate(estimate_error), intervals(intervals), panels(panels) {}

  double error_estimate;
  int intervals;
  int panels;
};

class DispersionRootError : public Error {
public:
  explicit DispersionRootError(double root)
      : Error("dispersion root on contour at q = " + std::to_string(root)), root(root) {}

  double root;
};

class NoCrossoverError : public Error {
public:
  explicit NoCrossoverError(double g_min)
      : Error("no crossover: Friedel tail dominates everywhere (g(x_min) = " +
              std::to_string(g_min) + " > 0)"),
        g_min(g_min) {}

  double g_min;
};

} // namespace skin
