#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "varpol/errors.hpp"

namespace varpol::roots {

struct Bracket {
  double lo = 0, hi = 0;
  double f_lo = 0, f_hi = 0;
};

/// Expand [lo, hi] geometrically (within [lo_limit, hi_limit]) until f changes
/// sign across the interval. Throws root_not_bracketed on failure.
template <class F>
Bracket expand_bracket(F&& f, double lo, double hi, double lo_limit, double hi_limit,
                       int max_steps = 80) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int i = 0; i < max_steps; ++i) {
    if ((f_lo <= 0 && f_hi >= 0) || (f_lo >= 0 && f_hi <= 0)) return {lo, hi, f_lo, f_hi};
    if (std::fabs(f_lo) < std::fabs(f_hi)) {
      lo = std::max(lo_limit, lo - 2.0 * (hi - lo));
      f_lo = f(lo);
    } else {
      hi = std::min(hi_limit, hi + 2.0 * (hi - lo));
      f_hi = f(hi);
    }
    if (lo <= lo_limit && hi >= hi_limit &&
        !((f_lo <= 0 && f_hi >= 0) || (f_lo >= 0 && f_hi <= 0)))
      break;
  }
  raise(Errc::root_not_bracketed, "no sign change found while expanding bracket");
}

/// Brent's method. Requires f(a) and f(b) of opposite sign.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol = 1e-14,
             int max_iter = 200) {
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0)) raise(Errc::root_not_bracketed, "brent: endpoints do not bracket");
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

}  // namespace varpol::roots
