#include "mtf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtf/numerics.hpp"

namespace mtf {

void RadialGrid::validate() const {
  if (!(rho_min > 0.0) || !(rho_max > rho_min) || !std::isfinite(rho_max)) {
    throw Error(ErrorKind::DomainError, "radial grid needs 0 < rho_min < rho_max");
  }
  if (n_points < 100) throw Error(ErrorKind::DomainError, "radial grid needs at least 100 points");
}

namespace spectrum {

namespace {

double peak(std::span<const double> x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

std::vector<double> radial_samples(const TridiagonalOperator& op, const std::vector<double>& vec) {
  std::vector<double> radial(vec.size());
  for (std::size_t i = 0; i < vec.size(); ++i) radial[i] = vec[i] / std::sqrt(op.weight[i]);
  return radial;
}

}  // namespace

TridiagonalOperator hamiltonian(const FluctuationPotential& v, int l, const RadialGrid& grid, double r0) {
  grid.validate();
  if (l < 0) throw Error(ErrorKind::DomainError, "angular momentum must be >= 0");
  if (!(r0 > 0.0)) throw Error(ErrorKind::DomainError, "r0 must be positive");

  const std::size_t n = grid.n_points - 1;  // last node carries the Dirichlet condition
  const double h = r0 * grid.spacing();
  const double first_gap = r0 * grid.rho_min;
  const double centrifugal = 0.5 * l * (l + 1);

  TridiagonalOperator op;
  op.diag.resize(n);
  op.offdiag.resize(n - 1);
  op.rho.resize(n);
  op.weight.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = grid.node(i);
    const double r = r0 * rho;
    const double gap_left = i == 0 ? first_gap : h;
    op.rho[i] = rho;
    op.weight[i] = 0.5 * (gap_left + h);
    const double potential = v(rho) / (r0 * r0);
    if (!std::isfinite(potential)) {
      throw Error(ErrorKind::RangeError, "potential undefined at rho=" + std::to_string(rho));
    }
    op.diag[i] = 0.5 * (1.0 / gap_left + 1.0 / h) / op.weight[i] + centrifugal / (r * r) + potential;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    op.offdiag[i] = -0.5 / (h * std::sqrt(op.weight[i] * op.weight[i + 1]));
  }
  return op;
}

int count_nodes(std::span<const double> radial) {
  const double floor = 1e-8 * peak(radial);
  int changes = 0;
  int sign = 0;
  for (double v : radial) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) ++changes;
    sign = s;
  }
  return changes;
}

std::vector<EigenMode> bound_states(const FluctuationPotential& v, int l, int n_max, const RadialGrid& grid,
                                    double r0) {
  if (n_max < 1) throw Error(ErrorKind::DomainError, "n_max must be >= 1");
  if (!v.confining()) {
    throw Error(ErrorKind::Unsupported, "bound states need a confining potential (m=1 or a custom oscillator)");
  }
  const auto count = static_cast<std::size_t>(n_max);
  const TridiagonalOperator coarse = hamiltonian(v, l, grid, r0);
  const TridiagonalOperator fine = hamiltonian(v, l, grid.refined(), r0);
  if (count > coarse.diag.size()) throw Error(ErrorKind::DimensionMismatch, "more modes requested than grid nodes");

  const numerics::TridiagEigen coarse_eig = numerics::tridiag_eigs(coarse.diag, coarse.offdiag, count);
  const numerics::TridiagEigen fine_eig = numerics::tridiag_eigs(fine.diag, fine.offdiag, count);

  std::vector<EigenMode> modes;
  modes.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    EigenMode mode;
    mode.n = static_cast<int>(k) + 1;
    mode.l = l;
    mode.omega2_raw = coarse_eig.values[k];
    mode.omega2 = (4.0 * fine_eig.values[k] - coarse_eig.values[k]) / 3.0;
    mode.error_estimate = std::abs(fine_eig.values[k] - coarse_eig.values[k]) / 3.0;
    mode.rho = coarse.rho;
    mode.radial = radial_samples(coarse, coarse_eig.vectors[k]);
    mode.nodes = count_nodes(mode.radial);
    modes.push_back(std::move(mode));
  }

  // Boundary check on the highest mode: the outer 1% of nodes must be empty.
  const auto& top = modes.back().radial;
  const std::size_t outer = std::max<std::size_t>(top.size() / 100, 2);
  double edge = 0.0;
  for (std::size_t i = top.size() - outer; i < top.size(); ++i) edge = std::max(edge, std::abs(top[i]));
  if (edge >= 1e-6 * peak(top)) {
    throw Error(ErrorKind::GridTooSmall, "mode n=" + std::to_string(n_max) + ", l=" + std::to_string(l) +
                                             " reaches rho_max=" + std::to_string(grid.rho_max) +
                                             "; increase rho_max");
  }
  return modes;
}

double origin_exponent(int l) {
  if (l < 0) throw Error(ErrorKind::DomainError, "angular momentum must be >= 0");
  return 0.5 + std::sqrt(0.25 + l * (l + 1) + 2.0);
}

double fitted_origin_exponent(const EigenMode& mode, double lo, double hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < mode.rho.size(); ++i) {
    const double rho = mode.rho[i];
    if (rho < lo || rho > hi || mode.radial[i] == 0.0) continue;
    const double x = std::log(rho);
    const double y = std::log(std::abs(mode.radial[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 3) throw Error(ErrorKind::DomainError, "fewer than 3 samples in the origin fit window");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

double oscillator_reference(int n, int l, double r0) {
  if (n < 1 || l < 0 || !(r0 > 0.0)) throw Error(ErrorKind::DomainError, "need n >= 1, l >= 0, r0 > 0");
  return (2.0 * n + l - 0.5) / (r0 * r0);
}

ContinuumProbe continuum_probe(const FluctuationPotential& v, int l, std::span<const double> box_sizes,
                               double spacing) {
  if (box_sizes.size() < 2) throw Error(ErrorKind::DomainError, "continuum probe needs at least two boxes");
  if (!(spacing > 0.0)) throw Error(ErrorKind::DomainError, "grid spacing must be positive");
  ContinuumProbe probe;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double box : box_sizes) {
    const auto n_points = static_cast<std::size_t>(std::llround(box / spacing));
    const RadialGrid grid{spacing, box, n_points};
    const TridiagonalOperator op = hamiltonian(v, l, grid, 1.0);
    const numerics::TridiagEigen eig = numerics::tridiag_eigs(op.diag, op.offdiag, 1);
    BoxEigenvalue entry{box, eig.values[0], numerics::sturm_count(op.diag, op.offdiag, 0.0)};
    probe.boxes.push_back(entry);
    if (!(entry.lambda_min > 0.0)) continue;
    const double x = std::log(box);
    const double y = std::log(entry.lambda_min);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(probe.boxes.size());
  probe.fitted_power = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return probe;
}

GaussianTailFit gaussian_tail_fit(const EigenMode& mode) {
  const auto& r = mode.radial;
  const auto& x = mode.rho;
  if (r.size() < 10) throw Error(ErrorKind::InsufficientDecay, "mode has too few samples");
  const double top = peak(r);
  std::size_t end = r.size();
  while (end > 0 && std::abs(r[end - 1]) < 1e-8 * top) --end;
  if (end + 5 > r.size()) {
    throw Error(ErrorKind::InsufficientDecay, "mode does not decay below 1e-8 of its peak inside the grid");
  }
  const double support = x[end - 1];
  std::size_t begin = 0;
  while (begin < end && x[begin] < 0.75 * support) ++begin;
  // Skip any node inside the window.
  for (std::size_t i = begin + 1; i < end; ++i) {
    if ((r[i] > 0.0) != (r[i - 1] > 0.0)) begin = i;
  }
  if (end < begin + 5) throw Error(ErrorKind::InsufficientDecay, "tail window is too short");
  if (std::abs(r[begin]) < 1e-12) {
    throw Error(ErrorKind::InsufficientDecay, "amplitude at the tail window start is below 1e-12");
  }

  // Least squares for y = g rho - sigma / rho on interior points of the window.
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = begin + 1; i + 1 < end; ++i) {
    const double dlog = (std::log(std::abs(r[i + 1])) - std::log(std::abs(r[i - 1]))) / (x[i + 1] - x[i - 1]);
    const double y = -dlog;
    const double f1 = x[i];
    const double f2 = -1.0 / x[i];
    a11 += f1 * f1;
    a12 += f1 * f2;
    a22 += f2 * f2;
    b1 += f1 * y;
    b2 += f2 * y;
  }
  const double det = a11 * a22 - a12 * a12;
  GaussianTailFit fit;
  fit.slope = (b1 * a22 - b2 * a12) / det;
  fit.sigma = (a11 * b2 - a12 * b1) / det;
  fit.window_lo = x[begin];
  fit.window_hi = x[end - 1];
  return fit;
}

double gaussian_tail_check(const EigenMode& mode) { return gaussian_tail_fit(mode).slope; }

SpectrumTable compute_spectrum(const FluctuationPotential& v, int l_min, int l_max, int n_max,
                               const RadialGrid& grid, double r0) {
  if (l_min < 0 || l_max < l_min) throw Error(ErrorKind::DomainError, "invalid l range");
  SpectrumTable table;
  table.m = v.m();
  table.r0 = r0;
  table.grid = grid;
  table.potential_label = v.label();
  for (int l = l_min; l <= l_max; ++l) {
    auto modes = bound_states(v, l, n_max, grid, r0);
    for (auto& mode : modes) table.modes.push_back(std::move(mode));
  }
  return table;
}

}  // namespace spectrum
}  // namespace mtf
