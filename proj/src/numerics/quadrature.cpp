#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "mtf/numerics.hpp"

namespace mtf::numerics {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const ScalarFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw Error(ErrorKind::DomainError, "integrand is not finite at x=" + std::to_string(x));
  }
  return y;
}

Segment gauss_kronrod(const ScalarFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate(const ScalarFn& f, Interval iv, const ToleranceSpec& tol) {
  iv.validate();
  tol.validate();

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, iv.lo, iv.hi);
  double total = first.value;
  double total_error = first.error;
  heap.push(first);

  int subdivisions = 0;
  while (total_error > std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) {
    if (subdivisions >= tol.max_iter) {
      throw Error(ErrorKind::NonConvergence,
                  "quadrature error " + std::to_string(total_error) + " after " +
                      std::to_string(subdivisions) + " subdivisions");
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(ErrorKind::NonConvergence, "quadrature interval collapsed below machine resolution");
    }
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum to avoid drift from the running updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace mtf::numerics
