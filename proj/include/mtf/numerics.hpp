#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mtf/error.hpp"

/// Numerical kernels: adaptive quadrature, bracketing root finding, Brent
/// minimisation, Dormand-Prince integration with dense output, and selected
/// eigenpairs of symmetric tridiagonal matrices.
namespace mtf::numerics {

using ScalarFn = std::function<double(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  /// Throws DomainError unless lo < hi and both are finite.
  void validate() const;
  double width() const { return hi - lo; }
};

struct ToleranceSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_iter = 200;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Quadrature

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. max_iter bounds the
/// number of interval subdivisions.
double integrate(const ScalarFn& f, Interval iv, const ToleranceSpec& tol);

// ---------------------------------------------------------------------------
// Root finding

/// Brent's method: bisection-safe with secant / inverse quadratic steps.
/// Requires a sign change over the bracket; an exact zero at an endpoint is
/// returned as is.
double find_root(const ScalarFn& f, Interval bracket, const ToleranceSpec& tol);

// ---------------------------------------------------------------------------
// Minimisation

struct ScalarMinimum {
  double x = 0.0;
  double fx = 0.0;
};

/// Brent's parabolic / golden-section minimiser. The caller guarantees f is
/// unimodal on the bracket. If an endpoint is lower than the interior
/// optimum it is returned instead, so the result never exceeds f at either
/// endpoint.
ScalarMinimum minimize_scalar(const ScalarFn& f, Interval bracket, const ToleranceSpec& tol);

// ---------------------------------------------------------------------------
// Initial value problems

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Returns true to stop the integration after an accepted step.
using StopPredicate = std::function<bool(double t, std::span<const double> y)>;

/// Accepted steps of a Dormand-Prince 5(4) run plus the coefficients of its
/// fourth-order continuous extension.
class DenseTrajectory {
 public:
  DenseTrajectory(std::size_t dim, double t0, std::vector<double> y0);

  std::size_t dim() const { return dim_; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  std::size_t steps() const { return times_.size() - 1; }
  bool stopped_early() const { return stopped_early_; }

  std::span<const double> times() const { return times_; }
  /// State at the i-th accepted node.
  std::span<const double> node(std::size_t i) const;

  /// Dense output; throws RangeError outside [t_begin, t_end].
  std::vector<double> operator()(double t) const;
  double component(double t, std::size_t k) const;

 private:
  friend DenseTrajectory solve_ivp(const OdeRhs&, std::vector<double>, Interval,
                                   const ToleranceSpec&, const StopPredicate&, std::size_t);

  void push_step(double t_next, std::span<const double> y_next, std::span<const double> cont);
  std::size_t locate(double t) const;

  std::size_t dim_;
  std::vector<double> times_;
  std::vector<double> states_;      // (steps+1) x dim
  std::vector<double> continuous_;  // steps x 5 x dim
  bool stopped_early_ = false;
};

/// Adaptive explicit Runge-Kutta (Dormand-Prince 5(4)) over span.lo -> span.hi.
/// Local error per step is held below abs_tol + rel_tol * |y| componentwise
/// (RMS norm). Throws StepUnderflow when the step size collapses below machine
/// resolution or the state becomes non-finite, NonConvergence when max_steps
/// attempts are exhausted.
DenseTrajectory solve_ivp(const OdeRhs& rhs, std::vector<double> y0, Interval span,
                          const ToleranceSpec& tol, const StopPredicate& stop = {},
                          std::size_t max_steps = 2'000'000);

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenproblem

struct TridiagEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x);

/// Lowest `count` eigenpairs: Sturm bisection for values, inverse iteration
/// (with reorthogonalisation inside clusters) for vectors.
TridiagEigen tridiag_eigs(std::span<const double> diag, std::span<const double> offdiag,
                          std::size_t count);

}  // namespace mtf::numerics
