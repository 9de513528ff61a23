#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtf/numerics.hpp"

/// Hedgehog profile q0(rho) = cos alpha(rho) of the soliton with potential
/// power m, in the dimensionless radius rho = r / r0.
namespace mtf::profile {

using numerics::Interval;
using numerics::ToleranceSpec;

struct ModelParams {
  int m = 1;
  double r0 = 1.0;
  /// Overall Lagrangian prefactor; cancels in every spectrum, carried for reporting.
  double alpha_f = 1.0 / 137.036;

  void validate() const;
};

enum class ProfileKind { AnalyticM2, AnalyticM3, TrialM1, TrialGeneral, Numeric };

std::string_view to_string(ProfileKind kind);

/// q0 ~ amplitude * rho^(-exponent) for m >= 2.
struct AsymptoticTail {
  double amplitude = 1.0;
  double exponent = 1.0;

  double operator()(double rho) const;
};

/// Samples of a shooting solution. The interior is represented by quintic
/// Hermite interpolation of (q0, q0', q0'') on the integrator's own nodes;
/// beyond match_rho the asymptotic form is continued from the last node.
struct NumericSamples {
  std::vector<double> rho;
  std::vector<double> q0;
  std::vector<double> dq0;
  std::vector<double> d2q0;
  double match_rho = 0.0;
};

class ProfileFunction {
 public:
  int m() const { return m_; }
  ProfileKind kind() const { return kind_; }
  const std::map<std::string, double>& params() const { return params_; }
  /// Throws BadParameter when the profile does not carry `name`.
  double param(const std::string& name) const;

  double q0(double rho) const;
  double dq0(double rho) const;
  double d2q0(double rho) const;
  double alpha(double rho) const;

  /// Interpolation nodes of numeric profiles; nullptr for closed forms.
  const NumericSamples* samples() const { return samples_.get(); }

 private:
  friend ProfileFunction analytic_profile(int m);
  friend ProfileFunction trial_profile(int m, double kappa);
  friend ProfileFunction shoot_profile(int m, const ToleranceSpec& tol, double rho_max);

  struct Derivs {
    double q;
    double dq;
    double d2q;
  };

  ProfileFunction(int m, ProfileKind kind, std::map<std::string, double> params,
                  std::shared_ptr<const NumericSamples> samples = nullptr);

  Derivs evaluate(double rho) const;
  Derivs evaluate_numeric(double rho) const;

  int m_;
  ProfileKind kind_;
  std::map<std::string, double> params_;
  std::shared_ptr<const NumericSamples> samples_;
};

/// Exact solutions: m=3 gives 1/sqrt(1+rho^2), m=2 gives 1/(1+rt^2) with
/// rt = (2/7)^(1/4) rho. Unsupported for other m.
ProfileFunction analytic_profile(int m);

/// m=1: exp(-rho^2/2) (1 + kappa0 rho^2)^(-1/4).
/// m>=2: (1 + kappa1 rho^2 + kappa2 rho^4)^(-xi/4), xi = 2/(m-1), with kappa2
/// pinned by the tail amplitude. Negative kappa is a BadParameter.
ProfileFunction trial_profile(int m, double kappa);

/// m (m-1)^2 / (m^2 + 3).
double trial_kappa2(int m);

/// Large-rho tail for m >= 2; Unsupported for m = 1 (Gaussian tail).
AsymptoticTail tail_params(int m);

/// Integrand of the energy functional at rho.
double energy_density(const ProfileFunction& p, double rho);

/// Energy functional over [0, inf): adaptive quadrature on [0, rho_max] plus
/// the tail mapped onto (0, 1] through rho = rho_max / t.
double energy(const ProfileFunction& p, const ToleranceSpec& tol, double rho_max = 20.0);

struct TrialOptimum {
  double kappa = 0.0;
  double energy = 0.0;
};

/// [0.01, 1] for kappa0 (m=1), [0, 20] for kappa1 (m>=2).
Interval default_trial_bracket(int m);

/// Minimises the energy of trial_profile(m, .) over the bracket. tol applies
/// to the minimiser; energies are evaluated to 1e-13.
TrialOptimum optimize_trial(int m, Interval bracket, const ToleranceSpec& tol);

/// Separatrix shooting for the profile equation: the series start
/// q0 = 1 - kappa rho^2 + (3 kappa^2 + m) rho^4 / 10 at rho = 1e-3 is integrated outward and kappa is
/// bisected between overshoot (q0 < 0) and undershoot (q0' > 0) down to
/// machine precision. Samples run to the last radius where both bracketing
/// trajectories agree (at most rho_max); the asymptotic tail continues them.
ProfileFunction shoot_profile(int m, const ToleranceSpec& tol, double rho_max = 40.0);

/// q0'' + (1 - q0^2) q0 / rho^2 - m rho^2 q0^(2m-1). DomainError for rho <= 0.
double ode_residual(const ProfileFunction& p, double rho);

/// Checks q0(0+) = 1, 0 <= q0 <= 1 and monotone decrease on the given radii.
/// Returns the violated conditions (empty when the profile is valid).
std::vector<std::string> check_invariants(const ProfileFunction& p, std::span<const double> rho);

/// Integer power that keeps the sign of negative bases.
double ipow(double x, int n);

}  // namespace mtf::profile
