#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtf/grid.hpp"
#include "mtf/profile.hpp"

/// Shape-fluctuation potential v(rho); the physical potential is v / r0^2.
namespace mtf::fluctuation {

enum class Convention { Bracket, ClosedForm, Custom };

std::string_view to_string(Convention c);

enum class TailDirection { Growth, Decay };

struct TailBehavior {
  TailDirection direction = TailDirection::Decay;
  double power = -2.0;
  double coefficient = 0.0;
};

/// v(rho) = (1 + 3 cos 2 alpha) / (4 rho^2) + m (2m - 1) / 2 rho^2 q0^(2m-2).
double potential_bracket(const profile::ProfileFunction& p, double rho);

/// Printed closed forms for the exact m=2 and m=3 profiles.
double potential_closed_form(int m, double rho);

/// m=1: (growth, 2, 1/2); m>=2: (decay, -2, m (2m-1) A^(2m-2) / 2 - 1/2).
TailBehavior tail_coefficient(int m);

struct PotentialSamples {
  RadialGrid grid;
  std::vector<double> values;
};

class FluctuationPotential {
 public:
  static FluctuationPotential bracket(profile::ProfileFunction p);
  static FluctuationPotential closed_form(int m);
  /// Arbitrary potential for reference problems (oscillator, free particle).
  /// m = 0 marks it as not derived from a soliton.
  static FluctuationPotential custom(std::string label, std::function<double(double)> v, int m = 0,
                                     bool confining = false);

  double operator()(double rho) const;

  int m() const { return m_; }
  Convention convention() const { return convention_; }
  const std::string& label() const { return label_; }
  const profile::ProfileFunction* source() const { return source_ ? &*source_ : nullptr; }
  /// True when the potential grows without bound (discrete spectrum).
  bool confining() const { return confining_; }
  /// Grid samples for tabulated potentials, nullptr otherwise.
  const PotentialSamples* table() const { return table_.get(); }

 private:
  friend FluctuationPotential potential_table(const profile::ProfileFunction& p, const RadialGrid& grid);

  FluctuationPotential(int m, Convention c, std::string label, std::function<double(double)> v, bool confining);

  int m_;
  Convention convention_;
  std::string label_;
  std::function<double(double)> v_;
  bool confining_;
  std::optional<profile::ProfileFunction> source_;
  std::shared_ptr<const PotentialSamples> table_;
};

/// Samples the bracket potential on the grid. Queries between nodes use a
/// natural cubic spline of rho^2 v; queries outside the grid raise RangeError.
FluctuationPotential potential_table(const profile::ProfileFunction& p, const RadialGrid& grid);

}  // namespace mtf::fluctuation
