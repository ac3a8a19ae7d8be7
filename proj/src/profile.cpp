#include "skin/profile.hpp"

#include "skin/error.hpp"

#include <cmath>
#include <limits>

namespace skin {

const char* to_string(Method m) {
  switch (m) {
  case Method::direct: return "direct";
  case Method::rescaled: return "rescaled";
  case Method::ibp: return "ibp";
  case Method::asymptotic: return "asymptotic";
  case Method::tabulated: return "tabulated";
  }
  return "?";
}

const char* to_string(Normalization n) {
  return n == Normalization::per_Eprime0 ? "per_Eprime0" : "per_E0";
}

std::size_t FieldProfile::failures() const {
  std::size_t n = 0;
  for (const auto& d : diagnostics)
    n += d.ok ? 0 : 1;
  return n;
}

void validate_positions(std::span<const double> xs, bool require_positive) {
  if (xs.empty())
    throw DomainError("profile needs at least one position");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || xs[i] < 0.0)
      throw DomainError("positions must be finite and non-negative");
    if (require_positive && !(xs[i] > 0.0))
      throw DomainError("positions must be positive for this method");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw DomainError("positions must be strictly increasing");
  }
}

namespace {

FieldValue evaluate(double x, const PlasmaParams& p, Method method, const FieldOptions& opts) {
  switch (method) {
  case Method::direct: return field_ratio_direct(x, p, opts);
  case Method::rescaled: return field_ratio_rescaled(x, p, opts);
  case Method::ibp: return field_ratio_ibp(x, p, opts);
  case Method::asymptotic: {
    FieldValue v;
    v.value = asymptotic_field(x, p.Omega, p.material, Normalization::per_Eprime0);
    return v;
  }
  case Method::tabulated: break;
  }
  throw DomainError("method cannot be evaluated");
}

void evaluate_point(FieldProfile& out, std::size_t i, const FieldOptions& opts) {
  const double x = out.xs[i];
  auto& d = out.diagnostics[i];
  try {
    Complex v;
    if (out.method == Method::asymptotic && out.normalization == Normalization::per_E0) {
      v = asymptotic_field(x, out.params.Omega, out.params.material, Normalization::per_E0);
    } else {
      const FieldValue fv = evaluate(x, out.params, out.method, opts);
      const double scale = std::abs(out.reference);
      v = fv.value / out.reference;
      d.error_estimate = fv.error_estimate / scale;
      d.tail_bound = fv.tail_bound / scale;
      d.intervals = fv.intervals;
      d.panels = fv.panels;
      d.roundoff_limited = fv.roundoff_limited;
      d.accelerated = fv.accelerated;
    }
    out.values[i] = v;
  } catch (const std::exception& ex) {
    d.ok = false;
    d.error = ex.what();
    out.values[i] = Complex(std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN());
  }
}

FieldProfile prepare(std::span<const double> xs, const PlasmaParams& p, Method method,
                     Normalization norm, const FieldOptions& opts) {
  if (method == Method::tabulated)
    throw DomainError("tabulated profiles are built with tabulated_profile()");
  validate_positions(xs, method == Method::asymptotic || method == Method::ibp);
  FieldProfile out;
  out.xs.assign(xs.begin(), xs.end());
  out.values.resize(xs.size());
  out.diagnostics.resize(xs.size());
  out.params = p;
  out.method = method;
  out.normalization = norm;
  if (norm == Normalization::per_E0 && method != Method::asymptotic) {
    // The x = 0 value of the same integral; ibp cannot reach x = 0.
    const Method ref = method == Method::direct ? Method::direct : Method::rescaled;
    out.reference = evaluate(0.0, p, ref, opts).value;
  }
  return out;
}

void finish(const FieldProfile& out) {
  if (out.failures() == out.xs.size())
    throw Error("every profile point failed; first error: " + out.diagnostics.front().error);
}

} // namespace

FieldProfile profile(std::span<const double> xs, const PlasmaParams& p, Method method,
                     Normalization norm, const FieldOptions& opts) {
  FieldProfile out = prepare(xs, p, method, norm, opts);
  const auto n = static_cast<long>(out.xs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i)
    evaluate_point(out, static_cast<std::size_t>(i), opts);
  finish(out);
  return out;
}

FieldProfile profile_reference(std::span<const double> xs, const PlasmaParams& p, Method method,
                               Normalization norm, const FieldOptions& opts) {
  FieldProfile out = prepare(xs, p, method, norm, opts);
  for (std::size_t i = 0; i < out.xs.size(); ++i)
    evaluate_point(out, i, opts);
  finish(out);
  return out;
}

FieldProfile tabulated_profile(std::vector<double> xs, std::vector<Complex> values,
                               const PlasmaParams& p, Normalization norm) {
  validate_positions(xs, false);
  if (values.size() != xs.size())
    throw DomainError("tabulated profile: positions and values differ in length");
  FieldProfile out;
  out.diagnostics.resize(xs.size());
  out.xs = std::move(xs);
  out.values = std::move(values);
  out.params = p;
  out.method = Method::tabulated;
  out.normalization = norm;
  return out;
}

} // namespace skin
