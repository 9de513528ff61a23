#include "mtf/fluctuation.hpp"

#include <cmath>
#include <string>

namespace mtf::fluctuation {

namespace {

void require_positive_radius(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorKind::DomainError, "potential evaluated at non-positive radius " + std::to_string(rho));
  }
}

// Natural cubic spline through uniformly spaced samples.
class UniformSpline {
 public:
  UniformSpline(double x0, double h, std::vector<double> y) : x0_(x0), h_(h), y_(std::move(y)), m_(y_.size(), 0.0) {
    const std::size_t n = y_.size();
    // Second derivatives from the tridiagonal system (Thomas algorithm).
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double rhs = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h_ * h_);
      const double denom = 4.0 - c[i - 1];
      c[i] = 1.0 / denom;
      d[i] = (rhs - d[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 1;) m_[i] = d[i] - c[i] * m_[i + 1];
  }

  double operator()(double x) const {
    const double s = (x - x0_) / h_;
    std::size_t i = static_cast<std::size_t>(std::floor(s));
    if (i + 1 >= y_.size()) i = y_.size() - 2;
    const double t = s - static_cast<double>(i);
    const double u = 1.0 - t;
    return u * y_[i] + t * y_[i + 1] + h_ * h_ / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
  }

 private:
  double x0_;
  double h_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace

std::string_view to_string(Convention c) {
  switch (c) {
    case Convention::Bracket: return "bracket";
    case Convention::ClosedForm: return "closed-form";
    case Convention::Custom: return "custom";
  }
  return "unknown";
}

double potential_bracket(const profile::ProfileFunction& p, double rho) {
  require_positive_radius(rho);
  const int m = p.m();
  const double q = p.q0(rho);
  const double cos_2alpha = 2.0 * q * q - 1.0;
  return (1.0 + 3.0 * cos_2alpha) / (4.0 * rho * rho) +
         0.5 * m * (2 * m - 1) * rho * rho * profile::ipow(q, 2 * m - 2);
}

double potential_closed_form(int m, double rho) {
  require_positive_radius(rho);
  if (m == 3) {
    const double r2 = rho * rho;
    const double s = 1.0 + r2;
    return (2.0 + r2 + 14.0 * r2 * r2) / (r2 * s * s);
  }
  if (m == 2) {
    const double u = std::pow(2.0 / 7.0, 0.25) * rho;
    const double u2 = u * u;
    const double s = 1.0 + u2;
    return std::sqrt(2.0 / 7.0) * (2.0 - 2.0 * u2 + 10.0 * u2 * u2) / (u2 * s * s);
  }
  throw Error(ErrorKind::Unsupported, "closed-form potential exists only for m=2,3 (got m=" + std::to_string(m) + ")");
}

TailBehavior tail_coefficient(int m) {
  if (m < 1) throw Error(ErrorKind::BadParameter, "potential power m must be >= 1");
  if (m == 1) return {TailDirection::Growth, 2.0, 0.5};
  const double a = profile::tail_params(m).amplitude;
  return {TailDirection::Decay, -2.0, 0.5 * m * (2 * m - 1) * std::pow(a, 2 * m - 2) - 0.5};
}

FluctuationPotential::FluctuationPotential(int m, Convention c, std::string label, std::function<double(double)> v,
                                           bool confining)
    : m_(m), convention_(c), label_(std::move(label)), v_(std::move(v)), confining_(confining) {}

FluctuationPotential FluctuationPotential::bracket(profile::ProfileFunction p) {
  const int m = p.m();
  std::string label = "bracket/" + std::string(profile::to_string(p.kind()));
  FluctuationPotential out(m, Convention::Bracket, std::move(label),
                           [p](double rho) { return potential_bracket(p, rho); }, m == 1);
  out.source_ = std::move(p);
  return out;
}

FluctuationPotential FluctuationPotential::closed_form(int m) {
  if (m != 2 && m != 3) {
    throw Error(ErrorKind::Unsupported, "closed-form potential exists only for m=2,3");
  }
  return FluctuationPotential(m, Convention::ClosedForm, "closed-form/m" + std::to_string(m),
                              [m](double rho) { return potential_closed_form(m, rho); }, false);
}

FluctuationPotential FluctuationPotential::custom(std::string label, std::function<double(double)> v, int m,
                                                  bool confining) {
  return FluctuationPotential(m, Convention::Custom, std::move(label), std::move(v), confining);
}

double FluctuationPotential::operator()(double rho) const {
  require_positive_radius(rho);
  return v_(rho);
}

FluctuationPotential potential_table(const profile::ProfileFunction& p, const RadialGrid& grid) {
  grid.validate();
  auto samples = std::make_shared<PotentialSamples>();
  samples->grid = grid;
  samples->values.reserve(grid.n_points);
  std::vector<double> scaled;
  scaled.reserve(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double rho = grid.node(i);
    const double v = potential_bracket(p, rho);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::RangeError, "profile does not support rho=" + std::to_string(rho));
    }
    samples->values.push_back(v);
    scaled.push_back(rho * rho * v);
  }
  const double h = grid.spacing();
  auto spline = std::make_shared<UniformSpline>(grid.rho_min, h, std::move(scaled));
  auto values = samples;
  auto eval = [spline, values](double rho) {
    const RadialGrid& g = values->grid;
    if (rho < g.rho_min || rho > g.rho_max) {
      throw Error(ErrorKind::RangeError, "rho=" + std::to_string(rho) + " outside the tabulated range");
    }
    // Exact at nodes.
    const double s = (rho - g.rho_min) / g.spacing();
    const double nearest = std::round(s);
    if (std::abs(s - nearest) < 1e-12) return values->values[static_cast<std::size_t>(nearest)];
    return (*spline)(rho) / (rho * rho);
  };
  FluctuationPotential out(p.m(), Convention::Bracket, "table/" + std::string(profile::to_string(p.kind())),
                           std::move(eval), p.m() == 1);
  out.source_ = p;
  out.table_ = std::move(samples);
  return out;
}

}  // namespace mtf::fluctuation
