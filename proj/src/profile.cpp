#include "mtf/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mtf::profile {

namespace {

constexpr double kSeriesStart = 1e-3;
constexpr double kEventEps = 1e-12;

void require_positive_radius(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorKind::DomainError, "radius must be positive and finite, got " + std::to_string(rho));
  }
}

// Quintic Hermite interpolation on [0, 1] with data scaled by the step h.
struct Quintic {
  double value;
  double first;
  double second;
};

Quintic quintic_hermite(double t, double h, double y0, double dy0, double ddy0, double y1, double dy1,
                        double ddy1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
  const double h3 = 10 * t3 - 15 * t4 + 6 * t5;
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 0.5 * (t3 - 2 * t4 + t5);

  const double d0 = -30 * t2 + 60 * t3 - 30 * t4;
  const double d1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double d2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
  const double d3 = -d0;
  const double d4 = -12 * t2 + 28 * t3 - 15 * t4;
  const double d5 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);

  const double s0 = -60 * t + 180 * t2 - 120 * t3;
  const double s1 = -36 * t + 96 * t2 - 60 * t3;
  const double s2 = 0.5 * (2 - 18 * t + 36 * t2 - 20 * t3);
  const double s3 = -s0;
  const double s4 = -24 * t + 84 * t2 - 60 * t3;
  const double s5 = 0.5 * (6 * t - 24 * t2 + 20 * t3);

  const double a = y0, b = h * dy0, c = h * h * ddy0, d = y1, e = h * dy1, f = h * h * ddy1;
  return {a * h0 + b * h1 + c * h2 + d * h3 + e * h4 + f * h5,
          (a * d0 + b * d1 + c * d2 + d * d3 + e * d4 + f * d5) / h,
          (a * s0 + b * s1 + c * s2 + d * s3 + e * s4 + f * s5) / (h * h)};
}

// Same equation for u = 1 - q; keeps digits near the origin where q ~ 1.
double deficit_rhs(int m, double rho, double u) {
  const double q = 1.0 - u;
  return u * (2.0 - u) * q / (rho * rho) - m * rho * rho * ipow(q, 2 * m - 1);
}

}  // namespace

double ipow(double x, int n) {
  double result = 1.0;
  double base = x;
  for (unsigned e = static_cast<unsigned>(n); e > 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

void ModelParams::validate() const {
  if (m < 1) throw Error(ErrorKind::BadParameter, "potential power m must be >= 1");
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw Error(ErrorKind::BadParameter, "r0 must be positive");
  if (!(alpha_f > 0.0) || !std::isfinite(alpha_f)) throw Error(ErrorKind::BadParameter, "alpha_f must be positive");
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::AnalyticM2: return "analytic-m2";
    case ProfileKind::AnalyticM3: return "analytic-m3";
    case ProfileKind::TrialM1: return "trial-m1";
    case ProfileKind::TrialGeneral: return "trial-general";
    case ProfileKind::Numeric: return "numeric";
  }
  return "unknown";
}

double AsymptoticTail::operator()(double rho) const { return amplitude * std::pow(rho, -exponent); }

ProfileFunction::ProfileFunction(int m, ProfileKind kind, std::map<std::string, double> params,
                                 std::shared_ptr<const NumericSamples> samples)
    : m_(m), kind_(kind), params_(std::move(params)), samples_(std::move(samples)) {}

double ProfileFunction::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error(ErrorKind::BadParameter, "profile has no parameter '" + name + "'");
  return it->second;
}

double ProfileFunction::q0(double rho) const { return evaluate(rho).q; }
double ProfileFunction::dq0(double rho) const { return evaluate(rho).dq; }
double ProfileFunction::d2q0(double rho) const { return evaluate(rho).d2q; }

double ProfileFunction::alpha(double rho) const { return std::acos(std::clamp(q0(rho), -1.0, 1.0)); }

ProfileFunction::Derivs ProfileFunction::evaluate(double rho) const {
  if (!(rho >= 0.0)) throw Error(ErrorKind::DomainError, "profile evaluated at negative radius");
  switch (kind_) {
    case ProfileKind::AnalyticM3: {
      const double s = 1.0 + rho * rho;
      const double q = 1.0 / std::sqrt(s);
      return {q, -rho * q / s, (2.0 * rho * rho - 1.0) * q / (s * s)};
    }
    case ProfileKind::AnalyticM2: {
      const double scale = std::pow(2.0 / 7.0, 0.25);
      const double u = scale * rho;
      const double s = 1.0 + u * u;
      return {1.0 / s, -2.0 * scale * u / (s * s), scale * scale * (6.0 * u * u - 2.0) / (s * s * s)};
    }
    case ProfileKind::TrialM1: {
      const double k = params_.at("kappa0");
      const double s = 1.0 + k * rho * rho;
      const double q = std::exp(-0.5 * rho * rho) * std::pow(s, -0.25);
      const double g = -rho - 0.5 * k * rho / s;
      const double dg = -1.0 - 0.5 * k * (1.0 - k * rho * rho) / (s * s);
      return {q, q * g, q * (g * g + dg)};
    }
    case ProfileKind::TrialGeneral: {
      const double k1 = params_.at("kappa1");
      const double k2 = params_.at("kappa2");
      const double xi = 2.0 / (m_ - 1);
      const double r2 = rho * rho;
      const double poly = 1.0 + k1 * r2 + k2 * r2 * r2;
      const double dpoly = 2.0 * k1 * rho + 4.0 * k2 * r2 * rho;
      const double ddpoly = 2.0 * k1 + 12.0 * k2 * r2;
      const double p = -0.25 * xi;
      const double q = std::pow(poly, p);
      const double dq = p * q / poly * dpoly;
      const double d2q = p * q / poly * ((p - 1.0) * dpoly * dpoly / poly + ddpoly);
      return {q, dq, d2q};
    }
    case ProfileKind::Numeric: return evaluate_numeric(rho);
  }
  throw Error(ErrorKind::Unsupported, "unknown profile kind");
}

ProfileFunction::Derivs ProfileFunction::evaluate_numeric(double rho) const {
  const NumericSamples& s = *samples_;
  if (rho >= s.match_rho) {
    const double qm = s.q0.back();
    const double rm = s.match_rho;
    if (m_ == 1) {
      // q ~ rho^(-1/2) exp(-rho^2/2), continued from the match point.
      const double q = qm * std::pow(rho / rm, -0.5) * std::exp(-0.5 * (rho - rm) * (rho + rm));
      const double g = -0.5 / rho - rho;
      const double dg = 0.5 / (rho * rho) - 1.0;
      return {q, q * g, q * (g * g + dg)};
    }
    const double xi = 2.0 / (m_ - 1);
    const double q = qm * std::pow(rho / rm, -xi);
    return {q, -xi * q / rho, xi * (xi + 1.0) * q / (rho * rho)};
  }
  auto it = std::upper_bound(s.rho.begin(), s.rho.end(), rho);
  std::size_t i = static_cast<std::size_t>(it - s.rho.begin());
  i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, s.rho.size() - 2);
  const double h = s.rho[i + 1] - s.rho[i];
  const double t = (rho - s.rho[i]) / h;
  const Quintic v =
      quintic_hermite(t, h, s.q0[i], s.dq0[i], s.d2q0[i], s.q0[i + 1], s.dq0[i + 1], s.d2q0[i + 1]);
  return {v.value, v.first, v.second};
}

ProfileFunction analytic_profile(int m) {
  if (m == 3) return ProfileFunction(3, ProfileKind::AnalyticM3, {});
  if (m == 2) return ProfileFunction(2, ProfileKind::AnalyticM2, {});
  throw Error(ErrorKind::Unsupported, "no analytic solution for m=" + std::to_string(m));
}

double trial_kappa2(int m) {
  if (m < 2) throw Error(ErrorKind::Unsupported, "kappa2 is defined for m >= 2");
  return static_cast<double>(m) * (m - 1) * (m - 1) / (m * m + 3.0);
}

ProfileFunction trial_profile(int m, double kappa) {
  if (m < 1) throw Error(ErrorKind::BadParameter, "potential power m must be >= 1");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorKind::BadParameter, "trial parameter must be finite and non-negative");
  }
  if (m == 1) {
    if (kappa == 0.0) throw Error(ErrorKind::BadParameter, "kappa0 must be positive");
    return ProfileFunction(1, ProfileKind::TrialM1, {{"kappa0", kappa}});
  }
  return ProfileFunction(m, ProfileKind::TrialGeneral, {{"kappa1", kappa}, {"kappa2", trial_kappa2(m)}});
}

AsymptoticTail tail_params(int m) {
  if (m == 1) throw Error(ErrorKind::Unsupported, "m=1 has a Gaussian tail, not a power law");
  if (m < 1) throw Error(ErrorKind::BadParameter, "potential power m must be >= 1");
  const double base = (m * m + 3.0) / (static_cast<double>(m) * (m - 1) * (m - 1));
  return {std::pow(base, 1.0 / (2.0 * (m - 1))), 2.0 / (m - 1)};
}

double energy_density(const ProfileFunction& p, double rho) {
  require_positive_radius(rho);
  const double q = p.q0(rho);
  const double dq = p.dq0(rho);
  const double one_minus = 1.0 - q * q;
  return one_minus * one_minus / (2.0 * rho * rho) + dq * dq + rho * rho * ipow(q, 2 * p.m());
}

double energy(const ProfileFunction& p, const ToleranceSpec& tol, double rho_max) {
  tol.validate();
  if (!(rho_max > 0.0)) throw Error(ErrorKind::DomainError, "rho_max must be positive");
  // Half the budget each for the core and the mapped tail.
  ToleranceSpec half = tol;
  half.abs_tol = 0.5 * tol.abs_tol;
  const double core = numerics::integrate([&](double rho) { return energy_density(p, rho); }, {0.0, rho_max}, half);
  const double tail = numerics::integrate(
      [&](double t) {
        const double rho = rho_max / t;
        return energy_density(p, rho) * rho_max / (t * t);
      },
      {0.0, 1.0}, half);
  return core + tail;
}

Interval default_trial_bracket(int m) {
  if (m == 1) return {0.01, 1.0};
  return {0.0, 20.0};
}

TrialOptimum optimize_trial(int m, Interval bracket, const ToleranceSpec& tol) {
  const ToleranceSpec energy_tol{1e-13, 1e-13, 5000};
  auto objective = [&](double kappa) { return energy(trial_profile(m, kappa), energy_tol); };
  const numerics::ScalarMinimum best = numerics::minimize_scalar(objective, bracket, tol);
  return {best.x, best.fx};
}

namespace {

enum class Shot { Overshoot, Undershoot, Undecided };

struct ShotResult {
  Shot outcome;
  numerics::DenseTrajectory trajectory;
};

ShotResult shoot_once(int m, double kappa, const ToleranceSpec& tol, double rho_end) {
  auto rhs = [m](double rho, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = deficit_rhs(m, rho, y[0]);
  };
  // State is (u, u') with u = 1 - q.
  auto event = [](double, std::span<const double> y) { return y[0] > 1.0 + kEventEps || y[1] < -kEventEps; };
  // u = kappa rho^2 - c4 rho^4 with c4 = (3 kappa^2 + m) / 10.
  const double c4 = (3.0 * kappa * kappa + m) / 10.0;
  const double r = kSeriesStart;
  std::vector<double> y0 = {kappa * r * r - c4 * r * r * r * r, 2.0 * kappa * r - 4.0 * c4 * r * r * r};
  try {
    numerics::DenseTrajectory traj = numerics::solve_ivp(rhs, y0, {kSeriesStart, rho_end}, tol, event);
    const auto last = traj.node(traj.steps());
    Shot outcome = Shot::Undecided;
    if (last[0] > 1.0 + kEventEps) {
      outcome = Shot::Overshoot;
    } else if (last[1] < -kEventEps) {
      outcome = Shot::Undershoot;
    }
    return {outcome, std::move(traj)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StepUnderflow) {
      throw Error(ErrorKind::ShootingDiverged,
                  "integration for kappa=" + std::to_string(kappa) + " collapsed: " + e.what());
    }
    throw;
  }
}

}  // namespace

ProfileFunction shoot_profile(int m, const ToleranceSpec& tol, double rho_max) {
  if (m < 1) throw Error(ErrorKind::BadParameter, "potential power m must be >= 1");
  if (!(rho_max >= 10.0)) throw Error(ErrorKind::BadParameter, "shooting needs rho_max >= 10");
  tol.validate();

  // Far enough that every trajectory off the separatrix triggers an event.
  const double rho_end = std::max(rho_max, 1e4);

  // Coarse geometric scan for the undershoot -> overshoot transition.
  double lo = 0.0;
  double hi = 0.0;
  {
    double prev_kappa = 0.0;
    Shot prev = Shot::Undecided;
    bool found = false;
    for (double kappa = 0.02; kappa <= 10.0; kappa *= 1.25) {
      const Shot s = shoot_once(m, kappa, tol, rho_end).outcome;
      if (prev == Shot::Undershoot && s != Shot::Undershoot) {
        lo = prev_kappa;
        hi = kappa;
        found = true;
        break;
      }
      prev = s;
      prev_kappa = kappa;
    }
    if (!found) throw Error(ErrorKind::NoBracket, "no undershoot/overshoot transition in kappa scan");
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Shot s = shoot_once(m, mid, tol, rho_end).outcome;
    if (s == Shot::Undecided) {
      lo = hi = mid;
      break;
    }
    if (s == Shot::Undershoot) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Trust the lower trajectory up to where the bracketing solutions part.
  const ShotResult lower = shoot_once(m, lo, tol, rho_end);
  const ShotResult upper = shoot_once(m, hi, tol, rho_end);
  const auto& traj = lower.trajectory;
  const double agree_tol = std::max(100.0 * tol.abs_tol, 1e-9);
  const double limit = std::min({rho_max, traj.t_end(), upper.trajectory.t_end()});

  auto samples = std::make_shared<NumericSamples>();
  samples->rho.push_back(0.0);
  samples->q0.push_back(1.0);
  samples->dq0.push_back(0.0);
  samples->d2q0.push_back(-2.0 * lo);
  for (std::size_t i = 0; i <= traj.steps(); ++i) {
    const double rho = traj.times()[i];
    if (rho > limit) break;
    const auto y = traj.node(i);
    const double q = 1.0 - y[0];
    if (q <= 0.0 || y[1] <= 0.0) break;
    if (std::abs(y[0] - upper.trajectory.component(rho, 0)) > agree_tol) break;
    samples->rho.push_back(rho);
    samples->q0.push_back(q);
    samples->dq0.push_back(-y[1]);
    samples->d2q0.push_back(-deficit_rhs(m, rho, y[0]));
  }
  if (samples->rho.size() < 4) {
    throw Error(ErrorKind::ShootingDiverged, "bracketing trajectories separate immediately");
  }
  const double match_rho = samples->rho.back();
  samples->match_rho = match_rho;

  return ProfileFunction(m, ProfileKind::Numeric,
                         {{"kappa", lo}, {"match_rho", match_rho}, {"rho_start", kSeriesStart}},
                         std::move(samples));
}

double ode_residual(const ProfileFunction& p, double rho) {
  require_positive_radius(rho);
  const double q = p.q0(rho);
  return p.d2q0(rho) + (1.0 - q * q) * q / (rho * rho) - p.m() * rho * rho * ipow(q, 2 * p.m() - 1);
}

std::vector<std::string> check_invariants(const ProfileFunction& p, std::span<const double> rho) {
  std::vector<std::string> violations;
  const double q_origin = p.q0(1e-9);
  if (std::abs(q_origin - 1.0) > 1e-9) {
    violations.push_back("q0(0+) = " + std::to_string(q_origin) + " differs from 1");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double r : rho) {
    const double q = p.q0(r);
    if (!(q >= 0.0 && q <= 1.0)) {
      violations.push_back("q0(" + std::to_string(r) + ") = " + std::to_string(q) + " outside [0, 1]");
      break;
    }
    if (q > prev) {
      violations.push_back("q0 increases at rho=" + std::to_string(r));
      break;
    }
    prev = q;
  }
  return violations;
}

}  // namespace mtf::profile
