#pragma once

#include "skin/asymptotics.hpp"
#include "skin/field.hpp"

#include <span>
#include <string>
#include <vector>

namespace skin {

enum class Method { direct, rescaled, ibp, asymptotic, tabulated };

const char* to_string(Method m);
const char* to_string(Normalization n);

struct PointDiagnostics {
  bool ok = true;
  std::string error; // module error text when !ok
  double error_estimate = 0.0;
  double tail_bound = 0.0;
  int intervals = 0;
  int panels = 0;
  bool roundoff_limited = false;
  bool accelerated = false;
};

// Sampled field. Failed points keep their slot with a NaN value and the error
// text in `diagnostics`.
struct FieldProfile {
  std::vector<double> xs; // cm, strictly increasing
  std::vector<Complex> values;
  std::vector<PointDiagnostics> diagnostics;
  PlasmaParams params;
  Method method = Method::rescaled;
  Normalization normalization = Normalization::per_Eprime0;
  // E(0)/E'(0) (cm) that per_E0 values were divided by; 1 for per_Eprime0.
  Complex reference = 1.0;

  std::size_t failures() const;
};

// Throws DomainError for empty or non-increasing input, or (when
// require_positive) any x <= 0.
void validate_positions(std::span<const double> xs, bool require_positive);

// Evaluates every point with the chosen method, OpenMP-parallel over xs.
// Throws if every point failed.
FieldProfile profile(std::span<const double> xs, const PlasmaParams& p, Method method,
                     Normalization norm = Normalization::per_Eprime0,
                     const FieldOptions& opts = {});

// Serial twin of profile(); same results bit for bit.
FieldProfile profile_reference(std::span<const double> xs, const PlasmaParams& p, Method method,
                               Normalization norm = Normalization::per_Eprime0,
                               const FieldOptions& opts = {});

// Wraps externally computed samples (synthetic data, files) for the analysis
// routines.
FieldProfile tabulated_profile(std::vector<double> xs, std::vector<Complex> values,
                               const PlasmaParams& p,
                               Normalization norm = Normalization::per_Eprime0);

} // namespace skin
