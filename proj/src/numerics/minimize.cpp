#include <cmath>
#include <limits>

#include "mtf/numerics.hpp"

namespace mtf::numerics {

ScalarMinimum minimize_scalar(const ScalarFn& f, Interval bracket, const ToleranceSpec& tol) {
  bracket.validate();
  tol.validate();

  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());

  double a = bracket.lo;
  double b = bracket.hi;
  double x = a + golden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  bool converged = false;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = std::max(sqrt_eps, tol.rel_tol) * std::abs(x) + tol.abs_tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
      converged = true;
      break;
    }

    bool golden_step = true;
    if (std::abs(e) > tol1) {
      // Parabola through (v, fv), (w, fw), (x, fx).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < mid) ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < mid) ? b - x : a - x;
      d = golden * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);

    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  if (!converged) {
    throw Error(ErrorKind::NonConvergence, "minimiser exhausted max_iter");
  }

  ScalarMinimum best{x, fx};
  for (double endpoint : {bracket.lo, bracket.hi}) {
    const double fe = f(endpoint);
    if (fe < best.fx) best = {endpoint, fe};
  }
  return best;
}

}  // namespace mtf::numerics
