#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mtf/numerics.hpp"

namespace mtf::numerics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Fifth minus fourth order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool all_finite(std::span<const double> y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

DenseTrajectory::DenseTrajectory(std::size_t dim, double t0, std::vector<double> y0)
    : dim_(dim), times_{t0}, states_(std::move(y0)) {}

std::span<const double> DenseTrajectory::node(std::size_t i) const {
  return std::span<const double>(states_).subspan(i * dim_, dim_);
}

void DenseTrajectory::push_step(double t_next, std::span<const double> y_next,
                                std::span<const double> cont) {
  times_.push_back(t_next);
  states_.insert(states_.end(), y_next.begin(), y_next.end());
  continuous_.insert(continuous_.end(), cont.begin(), cont.end());
}

std::size_t DenseTrajectory::locate(double t) const {
  if (!(t >= times_.front() && t <= times_.back())) {
    throw Error(ErrorKind::RangeError, "dense output requested outside the integrated span at t=" +
                                           std::to_string(t));
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  return std::min(i == 0 ? 0 : i - 1, steps() - 1);
}

double DenseTrajectory::component(double t, std::size_t k) const {
  if (steps() == 0) return states_[k];
  const std::size_t i = locate(t);
  const double h = times_[i + 1] - times_[i];
  const double s = (t - times_[i]) / h;
  const double s1 = 1.0 - s;
  const double* r = continuous_.data() + i * 5 * dim_;
  return r[k] + s * (r[dim_ + k] + s1 * (r[2 * dim_ + k] + s * (r[3 * dim_ + k] + s1 * r[4 * dim_ + k])));
}

std::vector<double> DenseTrajectory::operator()(double t) const {
  std::vector<double> y(dim_);
  for (std::size_t k = 0; k < dim_; ++k) y[k] = component(t, k);
  return y;
}

DenseTrajectory solve_ivp(const OdeRhs& rhs, std::vector<double> y0, Interval span,
                          const ToleranceSpec& tol, const StopPredicate& stop,
                          std::size_t max_steps) {
  span.validate();
  tol.validate();
  const std::size_t n = y0.size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "empty initial state");
  if (!all_finite(y0)) throw Error(ErrorKind::DomainError, "initial state is not finite");

  DenseTrajectory traj(n, span.lo, y0);

  std::vector<double> y = std::move(y0);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n), cont(5 * n);

  auto weighted_rms = [&](std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = tol.abs_tol + tol.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      const double v = tmp[i] / scale;
      sum += v * v;
    }
    return std::sqrt(sum / static_cast<double>(n));
  };

  double t = span.lo;
  rhs(t, y, k1);
  if (!all_finite(k1)) throw Error(ErrorKind::StepUnderflow, "derivative is not finite at the start");

  // Initial step from the scale of y and y' (Hairer's heuristic, first stage only).
  double h;
  {
    double dy = 0.0;
    double yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = tol.abs_tol + tol.rel_tol * std::abs(y[i]);
      dy += (k1[i] / scale) * (k1[i] / scale);
      yy += (y[i] / scale) * (y[i] / scale);
    }
    dy = std::sqrt(dy / n);
    yy = std::sqrt(yy / n);
    h = (dy < 1e-10 || yy < 1e-5) ? 1e-6 : 0.01 * yy / dy;
    h = std::min(h, span.width());
  }

  constexpr double safety = 0.9;
  constexpr double min_factor = 0.2;
  constexpr double max_factor = 5.0;
  const double eps = std::numeric_limits<double>::epsilon();

  std::size_t attempts = 0;
  bool last_rejected = false;
  while (t < span.hi) {
    if (++attempts > max_steps) {
      throw Error(ErrorKind::NonConvergence, "ODE integration exceeded the step budget at t=" + std::to_string(t));
    }
    if (h < 16.0 * eps * std::max(1.0, std::abs(t))) {
      throw Error(ErrorKind::StepUnderflow, "step size collapsed at t=" + std::to_string(t));
    }
    const bool final_step = t + h >= span.hi;
    if (final_step) h = span.hi - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double t_new = final_step ? span.hi : t + h;
    rhs(t_new, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(t_new, y_new, k7);

    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    double err = weighted_rms(y, y_new);
    if (!std::isfinite(err) || !all_finite(y_new) || !all_finite(k7)) {
      // Treat blow-up inside the step as a rejection with a hard shrink.
      h *= min_factor;
      last_rejected = true;
      continue;
    }

    if (err <= 1.0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        cont[i] = y[i];
        cont[n + i] = ydiff;
        cont[2 * n + i] = bspl;
        cont[3 * n + i] = ydiff - h * k7[i] - bspl;
        cont[4 * n + i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      traj.push_step(t_new, y_new, cont);
      t = t_new;
      y.swap(y_new);
      k1.swap(k7);

      double factor = err == 0.0 ? max_factor : safety * std::pow(err, -0.2);
      factor = std::clamp(factor, min_factor, last_rejected ? 1.0 : max_factor);
      h *= factor;
      last_rejected = false;

      if (stop && stop(t, y)) {
        traj.stopped_early_ = t < span.hi;
        break;
      }
    } else {
      h *= std::max(min_factor, safety * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
  return traj;
}

}  // namespace mtf::numerics
