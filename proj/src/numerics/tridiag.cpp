#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mtf/numerics.hpp"

namespace mtf::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_dims(std::span<const double> diag, std::span<const double> offdiag) {
  if (diag.empty() || offdiag.size() + 1 != diag.size()) {
    throw Error(ErrorKind::DimensionMismatch, "tridiagonal data needs offdiag.size() == diag.size() - 1 >= 0");
  }
}

double pivot_floor(std::span<const double> offdiag) {
  double emax = 1.0;
  for (double e : offdiag) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

std::size_t count_below(std::span<const double> diag, std::span<const double> offdiag, double x,
                        double pivmin) {
  std::size_t negatives = 0;
  double q = diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++negatives;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = diag[i] - x - offdiag[i - 1] * offdiag[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

// Solves (T - shift I) x = b in place by Gaussian elimination with partial
// pivoting; zero pivots are replaced by a tiny multiple of the matrix norm.
void shifted_solve(std::span<const double> diag, std::span<const double> offdiag, double shift,
                   double tiny, std::vector<double>& b) {
  const std::size_t n = diag.size();
  // Row i of the factor U holds u0[i] (diagonal), u1[i], u2[i] (two superdiagonals).
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<bool> swapped(n, false);

  double cur_d = diag[0] - shift;
  double cur_e = n > 1 ? offdiag[0] : 0.0;
  double cur_f = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double sub = offdiag[i];
    const double next_d = diag[i + 1] - shift;
    const double next_e = i + 2 < n ? offdiag[i + 1] : 0.0;
    if (std::abs(cur_d) >= std::abs(sub)) {
      if (cur_d == 0.0) cur_d = tiny;
      const double m = sub / cur_d;
      u0[i] = cur_d;
      u1[i] = cur_e;
      u2[i] = cur_f;
      mult[i] = m;
      cur_d = next_d - m * cur_e;
      cur_e = next_e;
      cur_f = 0.0;
    } else {
      const double m = cur_d / sub;
      u0[i] = sub;
      u1[i] = next_d;
      u2[i] = next_e;
      mult[i] = m;
      swapped[i] = true;
      const double d_new = cur_e - m * next_d;
      const double e_new = cur_f - m * next_e;
      cur_d = d_new;
      cur_e = e_new;
      cur_f = 0.0;
    }
    // Forward elimination on the right-hand side.
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= mult[i] * b[i];
  }
  u0[n - 1] = cur_d == 0.0 ? tiny : cur_d;

  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= u1[k] * b[k + 1];
    if (k + 2 < n) s -= u2[k] * b[k + 2];
    double piv = u0[k];
    if (std::abs(piv) < tiny) piv = std::copysign(tiny, piv == 0.0 ? 1.0 : piv);
    b[k] = s / piv;
  }
}

double norm2(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

}  // namespace

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
  check_dims(diag, offdiag);
  return count_below(diag, offdiag, x, pivot_floor(offdiag));
}

TridiagEigen tridiag_eigs(std::span<const double> diag, std::span<const double> offdiag,
                          std::size_t count) {
  check_dims(diag, offdiag);
  const std::size_t n = diag.size();
  if (count == 0 || count > n) {
    throw Error(ErrorKind::DimensionMismatch,
                "requested " + std::to_string(count) + " eigenpairs of a " + std::to_string(n) + "x" +
                    std::to_string(n) + " matrix");
  }
  for (double v : diag)
    if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, "non-finite diagonal entry");
  for (double v : offdiag)
    if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, "non-finite off-diagonal entry");

  // Gershgorin enclosure.
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lower = std::min(lower, diag[i] - radius);
    upper = std::max(upper, diag[i] + radius);
  }
  const double tnorm = std::max(std::abs(lower), std::abs(upper));
  const double pad = 2.0 * kEps * tnorm * static_cast<double>(n) + 2.0 * pivot_floor(offdiag);
  lower -= pad;
  upper += pad;
  const double pivmin = pivot_floor(offdiag);

  TridiagEigen out;
  out.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double lo = k == 0 ? lower : out.values.back() - pad;
    double hi = upper;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi || hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
      if (count_below(diag, offdiag, mid, pivmin) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.values.push_back(0.5 * (lo + hi));
  }

  // Inverse iteration. Vectors whose eigenvalues lie within a cluster
  // threshold of each other are Gram-Schmidt orthogonalised.
  const double cluster_gap = 1e-3 * tnorm;
  const double tiny = kEps * std::max(tnorm, pivmin);
  out.vectors.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double lambda = out.values[k];
    std::vector<double> x(n);
    // Deterministic start vector with no special symmetry.
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.0 + 0.731 * static_cast<double>(i + k));
    const double x0 = norm2(x);
    for (double& v : x) v /= x0;

    std::size_t cluster_begin = k;
    while (cluster_begin > 0 && lambda - out.values[cluster_begin - 1] < cluster_gap) --cluster_begin;

    bool converged = false;
    std::vector<double> residual(n);
    for (int iter = 0; iter < 8 && !converged; ++iter) {
      shifted_solve(diag, offdiag, lambda, tiny, x);
      for (std::size_t j = cluster_begin; j < k; ++j) {
        const auto& u = out.vectors[j];
        const double dot = std::inner_product(x.begin(), x.end(), u.begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot * u[i];
      }
      const double nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) break;
      for (double& v : x) v /= nx;

      double rnorm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double r = (diag[i] - lambda) * x[i];
        if (i > 0) r += offdiag[i - 1] * x[i - 1];
        if (i + 1 < n) r += offdiag[i] * x[i + 1];
        rnorm += r * r;
      }
      rnorm = std::sqrt(rnorm);
      converged = iter >= 1 && rnorm <= 64.0 * kEps * tnorm * std::sqrt(static_cast<double>(n));
    }
    if (!converged) {
      throw Error(ErrorKind::NonConvergence, "inverse iteration did not converge for eigenvalue " +
                                                 std::to_string(k) + " (" + std::to_string(lambda) + ")");
    }
    // Sign convention: largest-magnitude component positive.
    const auto it = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*it < 0.0) {
      for (double& v : x) v = -v;
    }
    out.vectors.push_back(std::move(x));
  }
  return out;
}

}  // namespace mtf::numerics
