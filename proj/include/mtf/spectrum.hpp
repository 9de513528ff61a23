#pragma once

#include <span>
#include <string>
#include <vector>

#include "mtf/fluctuation.hpp"
#include "mtf/grid.hpp"

/// Radial eigenproblem -R''/2 + [l(l+1)/(2 r^2) + V(r)] R = Omega^2 R.
namespace mtf::spectrum {

using fluctuation::FluctuationPotential;

/// Symmetric tridiagonal discretisation on the interior nodes r_i = r0 rho_i.
/// The Dirichlet nodes sit at r = 0 and r = r0 rho_max; the first cell has
/// width r0 rho_min and the rest r0 h. Eigenvectors y of the matrix map to
/// radial samples R_i = y_i / sqrt(weight_i).
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> rho;     // dimensionless node radii
  std::vector<double> weight;  // lumped mass of each node (physical units)
};

TridiagonalOperator hamiltonian(const FluctuationPotential& v, int l, const RadialGrid& grid, double r0 = 1.0);

struct EigenMode {
  int n = 1;  // 1 = lowest
  int l = 0;
  double omega2 = 0.0;      // Richardson extrapolated, units 1/r0^2
  double omega2_raw = 0.0;  // on the requested grid
  double error_estimate = 0.0;
  int nodes = 0;
  std::vector<double> rho;
  std::vector<double> radial;  // sum R^2 weight = 1
};

/// Number of sign changes, ignoring samples below 1e-8 of the peak.
int count_nodes(std::span<const double> radial);

/// Lowest n_max modes of a confining potential. GridTooSmall when the
/// n_max-th mode still has relative amplitude >= 1e-6 near rho_max.
std::vector<EigenMode> bound_states(const FluctuationPotential& v, int l, int n_max, const RadialGrid& grid,
                                    double r0 = 1.0);

/// R ~ rho^xi at the origin: xi = 1/2 + sqrt(1/4 + l(l+1) + 2).
double origin_exponent(int l);

/// Least-squares slope of ln|R| against ln rho over [lo, hi].
double fitted_origin_exponent(const EigenMode& mode, double lo = 0.02, double hi = 0.2);

/// (2n + l - 1/2) / r0^2.
double oscillator_reference(int n, int l, double r0 = 1.0);

struct BoxEigenvalue {
  double rho_max = 0.0;
  double lambda_min = 0.0;
  std::size_t negative_count = 0;  // eigenvalues below zero (Sturm count)
};

struct ContinuumProbe {
  std::vector<BoxEigenvalue> boxes;
  double fitted_power = 0.0;  // slope of ln lambda_min against ln rho_max
};

/// Lowest boxed eigenvalue for each box size on grids of the given spacing.
ContinuumProbe continuum_probe(const FluctuationPotential& v, int l, std::span<const double> box_sizes,
                               double spacing = 0.01);

struct GaussianTailFit {
  double slope = 0.0;  // g in -(ln R)' = g rho - sigma / rho
  double sigma = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Fits the log-derivative of R over the outer quarter of its support (where
/// |R| >= 1e-8 of the peak). InsufficientDecay when the mode does not decay
/// inside the grid or the window amplitude is below 1e-12.
GaussianTailFit gaussian_tail_fit(const EigenMode& mode);
double gaussian_tail_check(const EigenMode& mode);

struct SpectrumTable {
  int m = 1;
  double r0 = 1.0;
  RadialGrid grid;
  std::string potential_label;
  std::vector<EigenMode> modes;  // sorted by (l, n)
};

SpectrumTable compute_spectrum(const FluctuationPotential& v, int l_min, int l_max, int n_max,
                               const RadialGrid& grid, double r0 = 1.0);

}  // namespace mtf::spectrum
