#include <cmath>
#include <limits>
#include <string>

#include "mtf/numerics.hpp"

namespace mtf::numerics {

double find_root(const ScalarFn& f, Interval bracket, const ToleranceSpec& tol) {
  bracket.validate();
  tol.validate();

  double a = bracket.lo;
  double b = bracket.hi;
  double fa = f(a);
  double fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw Error(ErrorKind::DomainError, "root function is not finite at the bracket endpoints");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw Error(ErrorKind::BadBracket, "f(lo) and f(hi) have the same sign");
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  // b is the current best estimate, c the contrapoint with f(c) of opposite sign.
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }

    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol.abs_tol;
    const double half = 0.5 * (c - b);
    if (std::abs(half) <= tol1 || fb == 0.0) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Secant or inverse quadratic interpolation.
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * half * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }

    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, half);
    fb = f(b);
    if (!std::isfinite(fb)) {
      throw Error(ErrorKind::DomainError, "root function is not finite at x=" + std::to_string(b));
    }
  }
  throw Error(ErrorKind::NonConvergence, "root finder exhausted max_iter");
}

}  // namespace mtf::numerics
