#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mtf/numerics.hpp"
#include "mtf/profile.hpp"
#include "oracle_values.hpp"

using namespace mtf;
using namespace mtf::numerics;

namespace {

ToleranceSpec tight() { return {1e-12, 1e-12, 500}; }

}  // namespace

TEST(Interval, RejectsInvertedAndNonFinite) {
  EXPECT_THROW((Interval{1.0, 0.0}).validate(), Error);
  EXPECT_THROW((Interval{0.0, INFINITY}).validate(), Error);
  EXPECT_NO_THROW((Interval{-1.0, 1.0}).validate());
}

TEST(ToleranceSpec, RejectsNonPositive) {
  EXPECT_THROW((ToleranceSpec{0.0, 1e-8, 10}).validate(), Error);
  EXPECT_THROW((ToleranceSpec{1e-8, -1.0, 10}).validate(), Error);
  EXPECT_THROW((ToleranceSpec{1e-8, 1e-8, 0}).validate(), Error);
}

TEST(Integrate, Polynomial) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, {0.0, 1.0}, tight()), 1.0 / 3.0, 1e-14);
}

TEST(Integrate, Gaussian) {
  const double got = integrate([](double x) { return std::exp(-x * x); }, {0.0, 8.0}, tight());
  EXPECT_NEAR(got, std::sqrt(std::numbers::pi) / 2.0, 1e-12);
}

TEST(Integrate, ExactM3EnergyWindowMatchesOracle) {
  const auto p = profile::analytic_profile(3);
  const double got = integrate([&](double r) { return profile::energy_density(p, r); }, {1e-6, 50.0}, tight());
  EXPECT_NEAR(got, oracle::energy_m3_window, 1e-10);
}

TEST(Integrate, Linearity) {
  auto f = [](double x) { return std::sin(3 * x) + x; };
  auto g = [](double x) { return std::exp(-x) * std::cos(x); };
  const ToleranceSpec tol{1e-11, 1e-11, 500};
  const Interval iv{0.0, 4.0};
  const double a = 2.5, b = -0.75;
  const double lhs = integrate([&](double x) { return a * f(x) + b * g(x); }, iv, tol);
  const double rhs = a * integrate(f, iv, tol) + b * integrate(g, iv, tol);
  EXPECT_NEAR(lhs, rhs, 10 * tol.abs_tol);
}

TEST(Integrate, NonFiniteIsDomainError) {
  try {
    integrate([](double x) { return x > 0.5 ? std::log(0.5 - x) : x; }, {0.0, 1.0}, tight());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
}

TEST(Integrate, SubdivisionBudgetExhausted) {
  try {
    integrate([](double x) { return std::sin(1.0 / x); }, {1e-4, 1.0}, {1e-14, 1e-14, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergence);
  }
}

TEST(FindRoot, Sqrt2) {
  EXPECT_NEAR(find_root([](double x) { return x * x - 2; }, {1, 2}, tight()), std::sqrt(2.0), 1e-12);
}

TEST(FindRoot, Cosine) {
  EXPECT_NEAR(find_root([](double x) { return std::cos(x); }, {1, 2}, tight()), std::numbers::pi / 2, 1e-12);
}

TEST(FindRoot, ExactZeroAtEndpoint) {
  EXPECT_EQ(find_root([](double x) { return x - 1.0; }, {1.0, 3.0}, tight()), 1.0);
}

TEST(FindRoot, BadBracket) {
  try {
    find_root([](double x) { return x * x + 1; }, {-1, 1}, tight());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadBracket);
  }
}

TEST(FindRoot, StaysInsideBracket) {
  // steep and flat pieces to push the interpolation steps around
  auto f = [](double x) { return std::atan(50 * (x - 0.3)) + 0.01 * x * x * x; };
  for (double lo : {-3.0, -1.0, 0.0, 0.25}) {
    for (double hi : {0.35, 1.0, 5.0}) {
      const double x = find_root(f, {lo, hi}, tight());
      EXPECT_GE(x, lo);
      EXPECT_LE(x, hi);
    }
  }
}

TEST(FindRoot, ShootingMismatchM3GivesHalf) {
  // q''(0) = -2 kappa; mismatch against the analytic curvature q''(0) = -1
  const auto p = profile::analytic_profile(3);
  const double curvature = p.d2q0(1e-7);
  const double kappa = find_root([&](double k) { return -2 * k - curvature; }, {0.0, 2.0}, tight());
  EXPECT_NEAR(kappa, 0.5, 1e-9);
}

TEST(Minimize, Parabola) {
  const auto r = minimize_scalar([](double x) { return (x - 2) * (x - 2); }, {0, 5}, tight());
  EXPECT_NEAR(r.x, 2.0, 1e-6);
  EXPECT_NEAR(r.fx, 0.0, 1e-12);
}

TEST(Minimize, Quartic) {
  const auto r = minimize_scalar([](double x) { return x * x * x * x - x * x; }, {0.1, 2}, tight());
  EXPECT_NEAR(r.x, 1 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(r.fx, -0.25, 1e-12);
}

TEST(Minimize, NeverWorseThanEndpoints) {
  auto f = [](double x) { return -x; };  // minimum at the right end
  const auto r = minimize_scalar(f, {0, 1}, tight());
  EXPECT_LE(r.fx, f(0.0));
  EXPECT_LE(r.fx, f(1.0));
  auto g = [](double x) { return std::cos(x); };
  const auto s = minimize_scalar(g, {0.5, 6.0}, tight());
  EXPECT_LE(s.fx, g(0.5));
  EXPECT_LE(s.fx, g(6.0));
  EXPECT_NEAR(s.x, std::numbers::pi, 1e-6);
}

TEST(SolveIvp, Exponential) {
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0]; };
  const auto tr = solve_ivp(rhs, {1.0}, {0.0, 1.0}, tight());
  EXPECT_NEAR(tr.node(tr.steps())[0], std::exp(1.0), 1e-10);
  EXPECT_NEAR(tr.component(0.5, 0), std::exp(0.5), 1e-10);
}

TEST(SolveIvp, HarmonicOscillator) {
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  const auto tr = solve_ivp(rhs, {0.0, 1.0}, {0.0, std::numbers::pi / 2}, tight());
  EXPECT_NEAR(tr.node(tr.steps())[0], 1.0, 1e-10);
  const auto mid = tr(std::numbers::pi / 6);
  EXPECT_NEAR(mid[0], 0.5, 1e-10);
  EXPECT_NEAR(mid[1], std::sqrt(3.0) / 2, 1e-10);
}

TEST(SolveIvp, ProfileOdeM3FromSeries) {
  auto rhs = [](double r, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -(1 - y[0] * y[0]) * y[0] / (r * r) + 3 * r * r * std::pow(y[0], 5);
  };
  const double r0 = 1e-3;
  const double c4 = (3 * 0.25 + 3) / 10;
  const auto tr = solve_ivp(rhs, {1 - 0.5 * r0 * r0 + c4 * std::pow(r0, 4), -r0 + 4 * c4 * r0 * r0 * r0}, {r0, 5.0},
                            {1e-13, 1e-13, 100});
  EXPECT_NEAR(tr.component(5.0, 0), 1 / std::sqrt(26.0), 1e-8);
}

TEST(SolveIvp, TighterToleranceReducesError) {
  auto rhs = [](double t, std::span<const double> y, std::span<double> dy) { dy[0] = -2 * t * y[0]; };
  double prev = INFINITY;
  for (double tol = 1e-5; tol >= 1e-11; tol /= 2) {
    const auto tr = solve_ivp(rhs, {1.0}, {0.0, 3.0}, {tol, tol, 100});
    const double err = std::abs(tr.node(tr.steps())[0] - std::exp(-9.0));
    EXPECT_LE(err, prev * 1.0000001) << "tol=" << tol;
    prev = std::min(prev, err);
  }
}

TEST(SolveIvp, StopPredicateEndsEarly) {
  auto rhs = [](double, std::span<const double>, std::span<double> dy) { dy[0] = 1.0; };
  const auto tr = solve_ivp(rhs, {0.0}, {0.0, 10.0}, tight(), [](double, std::span<const double> y) {
    return y[0] > 2.0;
  });
  EXPECT_TRUE(tr.stopped_early());
  EXPECT_LT(tr.t_end(), 10.0);
  EXPECT_GT(tr.t_end(), 2.0);
}

TEST(SolveIvp, BlowUpIsStepUnderflow) {
  auto rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  try {
    solve_ivp(rhs, {1.0}, {0.0, 2.0}, tight());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepUnderflow);
  }
}

TEST(TridiagEigs, TwoByTwo) {
  const std::vector<double> d{2, 2}, e{1};
  const auto r = tridiag_eigs(d, e, 2);
  EXPECT_NEAR(r.values[0], 1.0, 1e-14);
  EXPECT_NEAR(r.values[1], 3.0, 1e-14);
  EXPECT_NEAR(std::abs(r.vectors[0][0]), 1 / std::sqrt(2.0), 1e-12);
}

TEST(TridiagEigs, DiscreteLaplacian) {
  const std::size_t n = 200;
  const double h = 1.0 / (n + 1);
  std::vector<double> d(n, 2 / (h * h)), e(n - 1, -1 / (h * h));
  const auto r = tridiag_eigs(d, e, 6);
  for (std::size_t k = 1; k <= 6; ++k) {
    const double expect = (2 - 2 * std::cos(k * std::numbers::pi / (n + 1))) / (h * h);
    EXPECT_NEAR(r.values[k - 1], expect, 1e-10 * expect);
  }
}

TEST(TridiagEigs, ReversalInvarianceAndOrthogonality) {
  const std::size_t n = 300;
  std::vector<double> d(n), e(n - 1);
  for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 + 0.01 * i + std::sin(0.1 * i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = -0.5 - 0.2 * std::cos(0.3 * i);
  std::vector<double> dr(d.rbegin(), d.rend()), er(e.rbegin(), e.rend());
  const auto a = tridiag_eigs(d, e, 10);
  const auto b = tridiag_eigs(dr, er, 10);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_NEAR(a.values[k], b.values[k], 1e-12 * std::max(1.0, std::abs(a.values[k])));
    if (k > 0) EXPECT_LT(a.values[k - 1], a.values[k]);
  }
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < n; ++k) dot += a.vectors[i][k] * a.vectors[j][k];
      EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-10);
    }
  }
}

TEST(TridiagEigs, SturmCountMatchesValues) {
  const std::vector<double> d{2, 2, 2}, e{-1, -1};
  EXPECT_EQ(sturm_count(d, e, 0.0), 0u);
  EXPECT_EQ(sturm_count(d, e, 2.0 - std::sqrt(2.0) + 1e-9), 1u);
  EXPECT_EQ(sturm_count(d, e, 10.0), 3u);
}

TEST(TridiagEigs, DimensionMismatch) {
  const std::vector<double> d{1, 2, 3}, e{1};
  try {
    tridiag_eigs(d, e, 1);
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.kind(), ErrorKind::DimensionMismatch);
  }
  const std::vector<double> e2{1, 1};
  EXPECT_THROW(tridiag_eigs(d, e2, 4), Error);
}
