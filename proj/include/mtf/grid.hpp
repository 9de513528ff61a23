#pragma once

#include <cstddef>

namespace mtf {

/// Uniform radial grid rho_i = rho_min + i h, i = 0 .. n_points-1.
struct RadialGrid {
  double rho_min = 1e-3;
  double rho_max = 12.0;
  std::size_t n_points = 4000;

  /// Throws DomainError unless 0 < rho_min < rho_max and n_points >= 100.
  void validate() const;
  double spacing() const { return (rho_max - rho_min) / static_cast<double>(n_points - 1); }
  double node(std::size_t i) const { return rho_min + static_cast<double>(i) * spacing(); }
  /// Same span with the spacing halved (2 n - 1 points).
  RadialGrid refined() const { return {rho_min, rho_max, 2 * n_points - 1}; }
};

}  // namespace mtf
