#pragma once

// Adaptive Gauss-Kronrod quadrature for complex integrands and a half-line
// cosine-transform driver built on it (panel decomposition at the zeros of
// cos(Xq) plus Wynn-epsilon acceleration of the panel sums).

#include "skin/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <queue>
#include <span>
#include <vector>

namespace skin::quad {

using Complex = std::complex<double>;

struct Segment {
  double a = 0.0;
  double b = 0.0;
  Complex value;
  double error = 0.0;
  double l1 = 0.0; // integral of |f|
  double floor = 0.0; // roundoff floor of `error`
};

// QUADPACK qk21 nodes and weights.
inline constexpr double gk21_nodes[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double gk21_kronrod[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452722, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double gk21_gauss[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double dhalf = std::abs(half);

  Complex fv1[10], fv2[10];
  const Complex fc = f(centre);
  Complex resk = gk21_kronrod[10] * fc;
  Complex resg = 0.0;
  double resabs = gk21_kronrod[10] * std::abs(fc);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * gk21_nodes[j];
    fv1[j] = f(centre - dx);
    fv2[j] = f(centre + dx);
    const Complex sum = fv1[j] + fv2[j];
    resk += gk21_kronrod[j] * sum;
    resabs += gk21_kronrod[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1)
      resg += gk21_gauss[j / 2] * sum;
  }
  const Complex reskh = resk * 0.5;
  double resasc = gk21_kronrod[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j)
    resasc += gk21_kronrod[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Segment s;
  s.a = a;
  s.b = b;
  s.value = resk * half;
  resabs *= dhalf;
  resasc *= dhalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  s.floor = 50.0 * epmach * resabs;
  s.error = std::max(s.floor, err);
  s.l1 = resabs;
  if (!std::isfinite(s.value.real()) || !std::isfinite(s.value.imag()))
    throw NumericalError("quadrature: integrand returned a non-finite value");
  return s;
}

struct AdaptiveResult {
  Complex value;
  double error = 0.0;
  double l1 = 0.0;
  int intervals = 0;
  bool converged = false;
  bool roundoff_limited = false;
};

// Globally adaptive bisection (worst interval first) until
// error <= max(abs_tol, rel_tol |value|) or the roundoff floor is reached.
template <class F>
AdaptiveResult adaptive(F& f, double a, double b, double abs_tol, double rel_tol,
                        int max_intervals = 500) {
  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(worse);

  Segment first = gauss_kronrod21(f, a, b);
  Complex total = first.value;
  double error = first.error;
  double l1 = first.l1;
  double floor = first.floor;
  heap.push(first);

  AdaptiveResult r;
  while (true) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (error <= tol) {
      r.converged = true;
      break;
    }
    if (error <= 2.0 * floor) {
      r.converged = true;
      r.roundoff_limited = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_intervals)
      break;
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      r.converged = true;
      r.roundoff_limited = true;
      break;
    }
    heap.pop();
    Segment left = gauss_kronrod21(f, worst.a, mid);
    Segment right = gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    floor += left.floor + right.floor - worst.floor;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the pieces so the running updates leave no drift.
  r.value = 0.0;
  r.error = 0.0;
  r.l1 = 0.0;
  r.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.error += heap.top().error;
    r.l1 += heap.top().l1;
    heap.pop();
  }
  return r;
}

// Wynn's epsilon algorithm on a sequence of partial sums. Returns the entry of
// the highest even column and, through `change`, the distance between the two
// most recent even-column estimates.
inline Complex wynn_epsilon(std::span<const Complex> sums, double& change) {
  const std::size_t n = sums.size();
  change = std::numeric_limits<double>::infinity();
  if (n == 0)
    return 0.0;
  if (n < 3) {
    if (n == 2)
      change = std::abs(sums[1] - sums[0]);
    return sums.back();
  }
  std::vector<Complex> prev(n + 1, Complex(0.0)); // eps_{k-1}
  std::vector<Complex> cur(sums.begin(), sums.end()); // eps_k
  Complex best = sums.back();
  Complex previous_best = sums[n - 2];
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Complex> next(n - k);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const Complex d = cur[i + 1] - cur[i];
      if (d == Complex(0.0)) {
        change = 0.0;
        return cur[i + 1];
      }
      next[i] = prev[i + 1] + 1.0 / d;
    }
    if (k % 2 == 0) {
      previous_best = next.size() >= 2 ? next[next.size() - 2] : best;
      best = next.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  change = std::abs(best - previous_best);
  return best;
}

struct FourierOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 400; // per segment
  int max_panels = 200000;
  // Finite q_max truncates the far region there; `accelerate` then still
  // extrapolates the panel sums unless switched off.
  double q_max = std::numeric_limits<double>::infinity();
  bool accelerate = true;
  int min_far_panels = 8;
  int wynn_window = 24;
};

struct FourierResult {
  Complex value;
  double error = 0.0;      // quadrature + acceleration estimate
  double l1 = 0.0;         // integral of |integrand| over the summed range
  double tail_bound = 0.0; // analytic bound on the integral beyond q_end
  double q_end = 0.0;      // last abscissa actually integrated
  int panels = 0;
  int intervals = 0;
  bool roundoff_limited = false;
  bool accelerated = false;
};

// Integral over [0, inf) of cos(X q) h(q). `breakpoints` are abscissae where h
// changes character (kinks, near-poles); [0, near_end] is integrated segment
// by segment, beyond it the integrand must decay monotonically in amplitude.
// `tail(Q)` bounds the integral of |h| over [Q, inf).
template <class H, class Tail>
FourierResult cosine_transform(H&& h, double X, std::span<const double> breakpoints,
                               double near_end, Tail&& tail, const FourierOptions& opt = {}) {
  if (!(X >= 0.0) || !std::isfinite(X))
    throw DomainError("cosine_transform: phase must be finite and non-negative");
  if (!(near_end > 0.0))
    throw DomainError("cosine_transform: near_end must be positive");
  if (!opt.accelerate && !std::isfinite(opt.q_max) && X > 0.0)
    throw DomainError("cosine_transform: plain summation needs a finite q_max");

  auto f = [&](double q) -> Complex {
    return X > 0.0 ? std::cos(X * q) * h(q) : Complex(h(q));
  };
  const double half_period = X > 0.0 ? std::numbers::pi / X : 0.0;

  // Near region knots: origin, breakpoints, zeros of cos(Xq), and an end
  // point moved forward onto a zero so that far panels alternate in sign.
  double end = std::min(near_end, opt.q_max);
  std::vector<double> knots{0.0};
  for (double bp : breakpoints)
    if (bp > 0.0 && bp < end)
      knots.push_back(bp);
  if (X > 0.0) {
    const double k_end = std::ceil(end / half_period - 0.5);
    if (k_end > opt.max_panels)
      throw ConvergenceError("cosine_transform: too many panels in the near region", 0.0, 0,
                             static_cast<int>(std::min<double>(k_end, 2e9)));
    const double zero_end = (k_end + 0.5) * half_period;
    end = std::min(std::max(end, zero_end), opt.q_max);
    for (long k = 0; (k + 0.5) * half_period < end; ++k)
      knots.push_back((k + 0.5) * half_period);
  }
  knots.push_back(end);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [&](double x, double y) { return y - x <= 1e-14 * end; }),
              knots.end());

  // A cheap pilot pass sets the absolute target and how it is shared out.
  std::vector<double> pilot_l1(knots.size() - 1);
  Complex pilot_total = 0.0;
  double pilot_l1_total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Segment s = gauss_kronrod21(f, knots[i], knots[i + 1]);
    pilot_total += s.value;
    pilot_l1[i] = s.l1;
    pilot_l1_total += s.l1;
  }
  double target = std::max(opt.rel_tol * std::abs(pilot_total), opt.abs_tol);
  if (!(target > 0.0))
    target = std::numeric_limits<double>::min();

  FourierResult r;
  for (int attempt = 0; attempt < 3; ++attempt) {
    r = FourierResult{};
    Complex near = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double share = pilot_l1_total > 0.0 ? pilot_l1[i] / pilot_l1_total : 1.0;
      const auto s = adaptive(f, knots[i], knots[i + 1], 0.5 * target * share, 0.0,
                              opt.max_intervals);
      if (!s.converged)
        throw ConvergenceError("cosine_transform: segment [" + std::to_string(knots[i]) + ", " +
                                   std::to_string(knots[i + 1]) + "] did not converge",
                               s.error, s.intervals, r.panels);
      near += s.value;
      r.error += s.error;
      r.l1 += s.l1;
      r.intervals += s.intervals;
      r.roundoff_limited = r.roundoff_limited || s.roundoff_limited;
      ++r.panels;
    }
    r.value = near;
    r.q_end = end;

    if (end < opt.q_max) {
      if (X == 0.0) {
        // Algebraic tail: q = end / t maps [end, inf) onto (0, 1].
        auto mapped = [&](double t) -> Complex { return h(end / t) * (end / (t * t)); };
        const bool truncated = std::isfinite(opt.q_max);
        const auto s = truncated ? adaptive(f, end, opt.q_max, 0.25 * target, 0.0, opt.max_intervals)
                                 : adaptive(mapped, 0.0, 1.0, 0.25 * target, 0.0, opt.max_intervals);
        if (!s.converged)
          throw ConvergenceError("cosine_transform: tail did not converge", s.error, s.intervals,
                                 r.panels);
        r.value += s.value;
        r.error += s.error;
        r.l1 += s.l1;
        r.intervals += s.intervals;
        r.roundoff_limited = r.roundoff_limited || s.roundoff_limited;
        r.q_end = truncated ? opt.q_max : std::numeric_limits<double>::infinity();
        ++r.panels;
      } else {
        std::vector<Complex> sums;
        Complex far = 0.0;
        double q = end;
        int far_panels = 0;
        while (q < opt.q_max) {
          const double next = std::min(q + half_period, opt.q_max);
          const auto s = adaptive(f, q, next, 0.05 * target, 0.0, opt.max_intervals);
          if (!s.converged)
            throw ConvergenceError("cosine_transform: far panel did not converge", s.error,
                                   s.intervals, r.panels);
          far += s.value;
          r.error += s.error;
          r.l1 += s.l1;
          r.intervals += s.intervals;
          r.roundoff_limited = r.roundoff_limited || s.roundoff_limited;
          ++r.panels;
          ++far_panels;
          q = next;
          sums.push_back(near + far);
          if (r.panels > opt.max_panels)
            throw ConvergenceError("cosine_transform: panel count overflow", r.error, r.intervals,
                                   r.panels);
          if (tail(q) <= 0.1 * target)
            break;
          if (opt.accelerate && far_panels >= opt.min_far_panels) {
            const std::size_t w = std::min<std::size_t>(sums.size(), opt.wynn_window);
            double change = 0.0;
            const Complex est =
                wynn_epsilon(std::span<const Complex>(sums).last(w), change);
            if (change <= 0.25 * target) {
              r.value = est;
              r.error += change;
              r.accelerated = true;
              break;
            }
          }
        }
        if (!r.accelerated)
          r.value = near + far;
        r.q_end = q;
      }
    }
    if (std::isfinite(r.q_end) && !r.accelerated)
      r.tail_bound = tail(r.q_end);
    if (r.accelerated)
      r.tail_bound = tail(r.q_end);

    const double wanted = std::max(opt.rel_tol * std::abs(r.value), opt.abs_tol);
    if (r.error <= wanted || r.roundoff_limited || target <= wanted)
      break;
    target = wanted;
  }
  return r;
}

} // namespace skin::quad
