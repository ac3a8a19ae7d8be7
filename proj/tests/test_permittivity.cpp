#include "oracles.hpp"

#include "skin/error.hpp"
#include "skin/permittivity.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace skin;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
Complex to_c(oracle::cld v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Value at eps -> 0 from three eps values by quadratic extrapolation.
Complex extrapolate_to_zero(double q, double Omega) {
  const double e1 = 1e-4, e2 = 1e-5, e3 = 1e-6;
  Complex f1 = eps_tr(q, Omega, e1), f2 = eps_tr(q, Omega, e2), f3 = eps_tr(q, Omega, e3);
  // Lagrange at 0 through (e1, f1), (e2, f2), (e3, f3).
  return f1 * (e2 * e3) / ((e1 - e2) * (e1 - e3)) + f2 * (e1 * e3) / ((e2 - e1) * (e2 - e3)) +
         f3 * (e1 * e2) / ((e3 - e1) * (e3 - e2));
}

Complex fd_first(double q, double Omega, double eps, double h) {
  double re = oracle::richardson([&](double s) { return eps_tr(s, Omega, eps).real(); }, q, h);
  double im = oracle::richardson([&](double s) { return eps_tr(s, Omega, eps).imag(); }, q, h);
  return {re, im};
}

Complex fd_second(double q, double Omega, double eps, double h) {
  double re = oracle::richardson([&](double s) { return d_eps_dq(s, Omega, eps).real(); }, q, h);
  double im = oracle::richardson([&](double s) { return d_eps_dq(s, Omega, eps).imag(); }, q, h);
  return {re, im};
}

} // namespace

TEST_CASE("eps_tr small-q limit against the long-double series") {
  const double Om = 0.1, eps = 0.01;
  const Complex z(Om, eps);
  const Complex limit = 1.0 - 1.0 / (Om * z);
  Complex v = eps_tr(1e-6, Om, eps);
  CHECK(rel(v, limit) <= 1e-8);
  CHECK(rel(v, to_c(oracle::series(1e-6L, Om, eps, 60))) <= 1e-14);
  for (double t : {0.02, 0.09, 0.11, 0.25, 0.5, 0.9}) {
    double q = t * std::abs(z);
    CHECK(rel(eps_tr(q, Om, eps), to_c(oracle::eps_tr(q, Om, eps))) <= 1e-12);
  }
}

TEST_CASE("eps_tr domain") {
  CHECK_THROWS_AS(eps_tr(0.0, 0.1, 0.01), DomainError);
  CHECK_THROWS_AS(eps_tr(0.1, 0.1, 0.0), SingularPointError);
  CHECK_THROWS_AS(eps_tr(-0.1, 0.1, 0.0), SingularPointError);
  CHECK_THROWS_AS(eps_tr(0.05, 0.0, 0.01), DomainError);
  CHECK_THROWS_AS(eps_tr(0.05, 0.1, -0.01), DomainError);
  CHECK_NOTHROW(eps_tr(0.1, 0.1, 1e-9));
}

TEST_CASE("eps_tr is even") {
  CHECK(rel(eps_tr(-0.05, 0.1, 1e-3), eps_tr(0.05, 0.1, 1e-3)) <= 1e-13);
}

TEST_CASE("collisionless branch") {
  const double Om = 0.08;
  Complex lo = eps_tr(0.05, Om, 0.0);
  CHECK(lo.imag() == 0.0);
  Complex lo_x = extrapolate_to_zero(0.05, Om);
  CHECK(rel(lo, lo_x) <= 1e-8);

  const double q = 0.2;
  Complex hi = eps_tr(q, Om, 0.0);
  double expected = 3 * std::numbers::pi * (q * q - Om * Om) / (4 * Om * q * q * q);
  CHECK(hi.imag() > 0.0);
  CHECK(std::abs(hi.imag() - expected) <= 1e-12 * expected);
  CHECK(rel(hi, extrapolate_to_zero(q, Om)) <= 1e-8);

  // Negative q mirrors positive q (Landau term is even).
  CHECK(eps_tr(-q, Om, 0.0) == hi);
}

TEST_CASE("small_q_series") {
  const double Om = 0.1, eps = 0.01;
  const Complex z(Om, eps);
  auto s0 = small_q_series(0.0, Om, eps, 5);
  CHECK(rel(s0.value, 1.0 - 1.0 / (Om * z)) <= 1e-15);

  const double q = 0.3 * std::abs(z);
  auto s40 = small_q_series(q, Om, eps, 40);
  CHECK(s40.terms == 40);
  CHECK(rel(s40.value, eps_tr(q, Om, eps)) <= 1e-10);

  const double q2 = 0.2 * std::abs(z);
  CHECK(small_q_series(q2, Om, eps, 20).error_bound >= small_q_series(q2, Om, eps, 40).error_bound);

  // First terms 1 - 1/(Omega z) - q^2/(5 Omega z^3).
  auto s2 = small_q_series(1e-3, Om, eps, 2);
  Complex two = 1.0 - 1.0 / (Om * z) - 1e-6 / (5.0 * Om * z * z * z);
  CHECK(rel(s2.value, two) <= 1e-14);

  CHECK_THROWS_AS(small_q_series(std::abs(z), Om, eps, 10), DivergentSeriesError);
  CHECK_THROWS_AS(small_q_series(0.2, Om, eps, 10), DivergentSeriesError);
  CHECK_THROWS_AS(small_q_series(0.01, Om, eps, 0), DomainError);
}

TEST_CASE("d_eps_dq") {
  CHECK(rel(d_eps_dq(-0.05, 0.1, 1e-3), -d_eps_dq(0.05, 0.1, 1e-3)) <= 1e-13);
  Complex d = d_eps_dq(0.05, 0.1, 0.01);
  CHECK(rel(d, fd_first(0.05, 0.1, 0.01, 1e-3)) <= 1e-6);
  // Divergence toward the Kohn point.
  for (double dq : {-1e-4, -3e-5, -1e-5, 1e-5, 3e-5, 1e-4})
    CHECK(std::abs(d_eps_dq(0.08 + dq, 0.08, 0.0)) > 1e3);
  CHECK_THROWS_AS(d_eps_dq(0.08, 0.08, 0.0), SingularPointError);
  // Series branch near q = 0 joins the closed form.
  PermittivityOptions closed;
  closed.derivative_series_threshold = 0.0;
  CHECK(rel(d_eps_dq(0.3 * std::abs(Complex(0.1, 0.01)) * 1.0001, 0.1, 0.01),
            d_eps_dq(0.3 * std::abs(Complex(0.1, 0.01)) * 1.0001, 0.1, 0.01, closed)) <= 1e-12);
  CHECK(rel(d_eps_dq(0.02, 0.1, 0.01), fd_first(0.02, 0.1, 0.01, 1e-3)) <= 1e-6);
}

TEST_CASE("d2_eps_dq2 against finite differences") {
  for (double q : {0.01, 0.03, 0.05, 0.2, 0.7})
    CHECK(rel(d2_eps_dq2(q, 0.1, 0.01), fd_second(q, 0.1, 0.01, 1e-3 * q)) <= 1e-6);
  CHECK(rel(d2_eps_dq2(-0.05, 0.1, 1e-3), d2_eps_dq2(0.05, 0.1, 1e-3)) <= 1e-13);
}

TEST_CASE("d2_eps_near_singularity") {
  // The bracket and 1/q^3 are both odd, so the product is even in q.
  CHECK(rel(d2_eps_near_singularity(-0.05, 0.1, 0.01), d2_eps_near_singularity(0.05, 0.1, 0.01)) <=
        1e-14);
  Complex v = d2_eps_near_singularity(0.1 + 1e-3, 0.1, 0.0);
  CHECK(v.real() > 1e5);
  CHECK(v.imag() == 0.0);
  CHECK_THROWS_AS(d2_eps_near_singularity(0.1, 0.1, 0.0), SingularPointError);

  // Full second derivative from a long-double second difference at eps = 1e-6.
  // The pole terms carry the leading 1/(q - Omega) behaviour; the neglected
  // logarithmic terms leave 12-18% at |q - Omega| = 1e-3 and fade as q -> Omega.
  const long double Om = 0.1L, e = 1e-6L;
  auto ratio_at = [&](double dq) {
    long double q = Om + dq, h = std::abs(dq) / 300;
    oracle::cld f2 = (oracle::closed(q + h, Om, e) - 2.0L * oracle::closed(q, Om, e) +
                      oracle::closed(q - h, Om, e)) /
                     (h * h);
    // The full analytic form matches the oracle itself.
    CHECK(rel(d2_eps_dq2(static_cast<double>(q), 0.1, 1e-6), to_c(f2)) <= 1e-4);
    return d2_eps_near_singularity(static_cast<double>(q), 0.1, 0.0).real() /
           static_cast<double>(f2.real());
  };
  for (double sgn : {-1.0, 1.0}) {
    double r3 = ratio_at(sgn * 1e-3), r4 = ratio_at(sgn * 1e-4), r5 = ratio_at(sgn * 1e-5);
    CHECK(std::abs(r3 - 1) <= 0.20);
    CHECK(std::abs(r4 - 1) < std::abs(r3 - 1));
    CHECK(std::abs(r5 - 1) < std::abs(r4 - 1));
    CHECK(std::abs(r4 - 1) <= 0.05);
  }
}

TEST_CASE("kohn_scan") {
  for (double Om : {0.1, 0.08}) {
    auto r = kohn_scan(Om, 1e-4, 0.02, 0.2, 500);
    // The maximum sits a fraction of eps above Omega.
    CHECK(std::abs(r.q_star - Om) <= 1e-4);
    CHECK(r.q_star >= r.grid.q_min);
    CHECK(r.q_star <= r.grid.q_max);
    CHECK(r.max_abs_derivative > 0.0);
    CHECK(r.grid.rounds == 3);
    CHECK(oracle::near(r.grid.refined_step, r.grid.coarse_step / 1000, 1e-12));
  }
  auto sharp = kohn_scan(0.1, 1e-4, 0.02, 0.2, 500);
  auto flat = kohn_scan(0.1, 1e-2, 0.02, 0.2, 500);
  CHECK(flat.max_abs_derivative < sharp.max_abs_derivative);

  // A collisionless grid that lands exactly on q = Omega skips that sample.
  auto hit = kohn_scan(0.125, 0.0, 0.0625, 0.1875, 17);
  CHECK(hit.grid.skipped >= 1);
  CHECK(std::abs(hit.q_star - 0.125) <= hit.grid.coarse_step);

  CHECK_THROWS_AS(kohn_scan(0.1, 1e-4, 0.0, 0.2, 100), DomainError);
  CHECK_THROWS_AS(kohn_scan(0.1, 1e-4, 0.2, 0.1, 100), DomainError);
  CHECK_THROWS_AS(kohn_scan(0.1, 1e-4, 0.02, 0.2, 9), DomainError);
}

TEST_CASE("parallel derivative magnitudes equal the serial reference bit for bit") {
  std::vector<double> qs;
  for (int i = 0; i < 4001; ++i)
    qs.push_back(0.01 + 0.2 * i / 4000.0);
  for (double eps : {0.0, 1e-4}) {
    auto par = derivative_magnitudes(qs, 0.1, eps);
    auto ser = derivative_magnitudes_reference(qs, 0.1, eps);
    REQUIRE(par.size() == ser.size());
    bool same = true;
    for (std::size_t i = 0; i < par.size(); ++i)
      same = same && (std::isnan(par[i]) ? std::isnan(ser[i]) : par[i] == ser[i]);
    CHECK(same);
  }
}

TEST_CASE("property: parity on random grid") {
  for (int i = 0; i < 500; ++i) {
    double Om = oracle::log_uniform(1e-3, 0.9), eps = oracle::log_uniform(1e-7, 0.5);
    double q = oracle::log_uniform(1e-4, 10.0);
    CHECK(rel(eps_tr(-q, Om, eps), eps_tr(q, Om, eps)) <= 1e-12);
    CHECK(rel(d_eps_dq(-q, Om, eps), -d_eps_dq(q, Om, eps)) <= 1e-12);
  }
}

TEST_CASE("property: collisionless reality and Landau term") {
  for (int i = 0; i < 1000; ++i) {
    double Om = oracle::log_uniform(1e-3, 0.9);
    double q = oracle::log_uniform(1e-3 * Om, 100 * Om);
    if (std::abs(q - Om) < 1e-9 * Om)
      continue;
    Complex v = eps_tr(q, Om, 0.0);
    if (q < Om) {
      CHECK(v.imag() == 0.0);
    } else {
      double expected = 3 * std::numbers::pi * (q * q - Om * Om) / (4 * Om * q * q * q);
      CHECK(std::abs(v.imag() - expected) <= 1e-12 * expected);
    }
  }
}

TEST_CASE("property: eps -> 0 continuity is monotone") {
  for (int i = 0; i < 200; ++i) {
    double Om = oracle::log_uniform(1e-2, 0.5);
    double q = oracle::log_uniform(0.05 * Om, 20 * Om);
    if (std::abs(q - Om) < 0.05 * Om)
      continue;
    Complex v0 = eps_tr(q, Om, 0.0);
    double d3 = std::abs(eps_tr(q, Om, 1e-3) - v0);
    double d4 = std::abs(eps_tr(q, Om, 1e-4) - v0);
    double d5 = std::abs(eps_tr(q, Om, 1e-5) - v0);
    CHECK(d4 < d3);
    CHECK(d5 < d4);
  }
}

TEST_CASE("property: series and closed form agree on the annulus") {
  PermittivityOptions closed;
  closed.series_threshold = 0.0;
  for (int i = 0; i < 500; ++i) {
    double Om = oracle::log_uniform(1e-3, 0.9), eps = oracle::log_uniform(1e-6, 0.5);
    double t = oracle::uniform(0.05, 0.5);
    double q = t * std::abs(Complex(Om, eps));
    CHECK(rel(small_q_series(q, Om, eps, 80).value, eps_tr(q, Om, eps, closed)) <= 1e-9);
  }
}

TEST_CASE("property: analytic derivatives match Richardson differences away from singular points") {
  for (int i = 0; i < 300; ++i) {
    double Om = oracle::uniform(0.05, 0.5);
    double eps = i % 3 == 0 ? 0.0 : oracle::log_uniform(1e-4, 0.1);
    double q = oracle::uniform(0.02, 1.0);
    double dist = std::abs(q - Om);
    if (dist < 1e-2)
      continue;
    double h = std::min(1e-3, dist / 10);
    CHECK(rel(d_eps_dq(q, Om, eps), fd_first(q, Om, eps, h)) <= 1e-6);
    CHECK(rel(d2_eps_dq2(q, Om, eps), fd_second(q, Om, eps, h)) <= 1e-6);
  }
}
