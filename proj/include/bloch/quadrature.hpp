#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bloch/errors.hpp"

namespace bloch {

/// Adaptive composite Simpson on [a, b] (oriented: b < a negates). The relative tolerance
/// is taken against the larger of |integral| and the integral of |f|, floored at abs_floor;
/// the work is capped at max_intervals accepted panels, past which QuadratureError reports
/// the error estimate.
template <class Real, class F>
Real adaptive_simpson(F&& f, Real a, Real b, Real tol, Real abs_floor = Real(0),
                      std::size_t max_intervals = std::size_t(1) << 20) {
  if (a == b) return Real(0);
  if (b < a) return -adaptive_simpson<Real>(f, b, a, tol, abs_floor, max_intervals);
  if (!(tol > Real(0))) throw ConfigError("quadrature tolerance must be positive");

  struct Panel {
    Real a, b, fa, fm, fb, s;
  };
  auto simpson = [](Real a, Real b, Real fa, Real fm, Real fb) { return (b - a) / Real(6) * (fa + Real(4) * fm + fb); };

  constexpr int initial = 16;
  const Real width = b - a;
  std::vector<Panel> stack;
  Real coarse = 0, coarse_abs = 0;
  {
    Real x0 = a, f0 = f(a);
    for (int k = 1; k <= initial; ++k) {
      const Real x1 = k == initial ? b : a + width * Real(k) / Real(initial);
      const Real xm = Real(0.5) * (x0 + x1);
      const Real fm = f(xm), f1 = f(x1);
      const Real s = simpson(x0, x1, f0, fm, f1);
      coarse += s;
      coarse_abs += Real(1) / Real(6) * (x1 - x0) * (std::abs(f0) + Real(4) * std::abs(fm) + std::abs(f1));
      stack.push_back({x0, x1, f0, fm, f1, s});
      x0 = x1;
      f0 = f1;
    }
  }
  const Real scale = std::max(std::abs(coarse), coarse_abs);
  const Real abs_tol = std::max(tol * (scale > Real(0) ? scale : Real(1)), abs_floor);
  const Real min_width = width * std::numeric_limits<Real>::epsilon() * Real(16);

  // Panels are taken left to right, so the summation order is fixed.
  Real total = 0, err = 0;
  std::size_t accepted = 0;
  std::vector<Panel> work(stack.rbegin(), stack.rend());
  while (!work.empty()) {
    const Panel p = work.back();
    work.pop_back();
    const Real m = Real(0.5) * (p.a + p.b);
    const Real lm = Real(0.5) * (p.a + m), rm = Real(0.5) * (m + p.b);
    const Real flm = f(lm), frm = f(rm);
    const Real left = simpson(p.a, m, p.fa, flm, p.fm);
    const Real right = simpson(m, p.b, p.fm, frm, p.fb);
    const Real diff = left + right - p.s;
    const Real local = abs_tol * (p.b - p.a) / width;
    if (std::abs(diff) <= Real(15) * local || (p.b - p.a) <= min_width) {
      total += left + right + diff / Real(15);
      err += std::abs(diff) / Real(15);
      ++accepted;
      continue;
    }
    if (accepted + work.size() + 2 > max_intervals) {
      const Real achieved = (err + std::abs(diff) / Real(15)) / (scale > Real(0) ? scale : Real(1));
      throw QuadratureError("adaptive Simpson exceeded " + std::to_string(max_intervals) + " intervals",
                            static_cast<double>(achieved));
    }
    work.push_back({m, p.b, p.fm, frm, p.fb, right});
    work.push_back({p.a, m, p.fa, flm, p.fm, left});
  }
  return total;
}

/// arccos(x) with |x| allowed to exceed 1 by `slack` (then saturated); beyond that the
/// argument is rejected. slack = infinity saturates everything.
template <class Real>
Real guarded_acos(Real x, Real slack) {
  if (x >= Real(-1) && x <= Real(1)) return std::acos(x);
  if (std::isnan(x)) throw QuadratureError("arccos argument is NaN", std::numeric_limits<double>::infinity());
  if (std::abs(x) - Real(1) <= slack) return x > 0 ? Real(0) : std::numbers::pi_v<Real>;
  throw QuadratureError("arccos argument " + std::to_string(static_cast<double>(x)) + " outside [-1, 1]",
                        std::numeric_limits<double>::infinity());
}

/// Oriented integral of g(t)/sqrt(1 - t^2) over [lo, hi] via t = cos s, which turns it into
/// the integral of g(cos s) over [acos hi, acos lo]. The endpoints are evaluated at lo and
/// hi themselves: cos(acos t) loses the relative precision of small t.
template <class Real, class G>
Real arccos_weight_integral(G&& g, Real lo, Real hi, Real tol, Real slack = Real(1e-9), Real abs_floor = Real(0)) {
  if (lo == hi) return Real(0);
  const Real s_lo = guarded_acos(hi, slack);
  const Real s_hi = guarded_acos(lo, slack);
  auto h = [&](Real s) {
    if (s == s_lo) return g(hi);
    if (s == s_hi) return g(lo);
    return g(std::cos(s));
  };
  return adaptive_simpson<Real>(h, s_lo, s_hi, tol, abs_floor);
}

/// c/(2t) - t, with the removable case t = c = 0 sent to 0.
template <class Real>
Real kernel_argument(Real c, Real t) {
  if (t == Real(0)) {
    if (c == Real(0)) return Real(0);
    return c > 0 ? std::numeric_limits<Real>::infinity() : -std::numeric_limits<Real>::infinity();
  }
  return c / (Real(2) * t) - t;
}

/// Oriented integral of arccos(c/(2t) - t)/sqrt(1 - t^2) over [t_lo, t_hi]. With the
/// default slack the arccos argument is clamped to [-1, 1]; a finite slack rejects
/// arguments further than that outside.
double singular_arccos_integral(double c, double t_lo, double t_hi, double tol,
                                double slack = std::numeric_limits<double>::infinity(), double abs_floor = 0.0);

}  // namespace bloch
