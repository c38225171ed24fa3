#include "dirac_weyl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <lapacke.h>

#include "dirac_weyl/errors.hpp"

namespace dw {

namespace {

double max_positive_potential(const Potential& v, const Grid& grid) {
  double vmax = 0.0;
  for (int i = 0; i < grid.size(); ++i) vmax = std::max(vmax, v(grid.x(i)));
  return vmax;
}

double spacing_bound(const Potential& v, const Grid& grid, double h, int ppw) {
  return h / (ppw * std::sqrt(max_positive_potential(v, grid) + 1.0));
}

}  // namespace

double SemiclassicalProblem::max_spacing() const {
  return spacing_bound(potential, grid, h, points_per_wavelength);
}

void SemiclassicalProblem::validate() const {
  if (!(h > 0) || !std::isfinite(h)) throw ConfigError("h must be positive and finite");
  if (points_per_wavelength < 2) throw ConfigError("points per wavelength must be at least 2");
  double bound = max_spacing();
  if (grid.spacing() > bound * (1 + 1e-9)) {
    int need = static_cast<int>(std::ceil(grid.length() / bound - 1e-12)) + 1;
    throw ConfigError("grid under-resolves h = " + std::to_string(h) + ": spacing " +
                      std::to_string(grid.spacing()) + " exceeds " + std::to_string(bound) +
                      "; need n_points >= " + std::to_string(need));
  }
  if (!grid.periodic()) {
    double margin = 4 * grid.spacing();
    for (const CutoffFunction* psi : {&psi1, &psi2}) {
      if (!psi->bounded()) continue;
      if (psi->support_min() < grid.x_min() + margin || psi->support_max() > grid.x_max() - margin)
        throw ConfigError("cutoff support [" + std::to_string(psi->support_min()) + ", " +
                          std::to_string(psi->support_max()) +
                          "] reaches the Dirichlet boundary");
    }
  }
}

Grid resolve_grid(const Potential& v, double h, double x_min, double x_max, Boundary boundary,
                  int points_per_wavelength) {
  Grid grid(x_min, x_max, 16, boundary);
  for (int iter = 0; iter < 50; ++iter) {
    double bound = spacing_bound(v, grid, h, points_per_wavelength);
    if (grid.spacing() <= bound * (1 + 1e-12)) return grid;
    Grid next = Grid::with_max_spacing(x_min, x_max, bound, boundary);
    if (next.n_points() <= grid.n_points())
      next = Grid(x_min, x_max, grid.n_points() + 1, boundary);
    grid = next;
  }
  throw NumericError("resolve_grid: resolution rule did not settle");
}

Eigen::MatrixXd OperatorMatrix::to_dense() const {
  int n = size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = diagonal(i);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = off_diagonal(i);
  if (periodic && n > 2) a(0, n - 1) = a(n - 1, 0) = off_diagonal(0);
  return a;
}

Eigen::VectorXd OperatorMatrix::apply(const Eigen::VectorXd& x) const {
  int n = size();
  Eigen::VectorXd y = diagonal.cwiseProduct(x);
  for (int i = 0; i + 1 < n; ++i) {
    y(i) += off_diagonal(i) * x(i + 1);
    y(i + 1) += off_diagonal(i) * x(i);
  }
  if (periodic && n > 2) {
    y(0) += off_diagonal(0) * x(n - 1);
    y(n - 1) += off_diagonal(0) * x(0);
  }
  return y;
}

OperatorMatrix assemble_operator(const SemiclassicalProblem& problem) {
  const Grid& g = problem.grid;
  int n = g.size();
  double c = problem.h * problem.h / (g.spacing() * g.spacing());
  OperatorMatrix m;
  m.periodic = g.periodic();
  m.diagonal.resize(n);
  m.off_diagonal = Eigen::VectorXd::Constant(n - 1, -c);
  for (int i = 0; i < n; ++i) m.diagonal(i) = 2 * c - problem.potential(g.x(i));
  return m;
}

int EigenSystem::count_at_or_below(double tau) const {
  return static_cast<int>(std::count_if(energies.begin(), energies.end(),
                                        [tau](double e) { return e <= tau; }));
}

EigenSystem eigendecompose(const OperatorMatrix& matrix, double measure_weight,
                           EnergyWindow window) {
  const int n = matrix.size();
  if (n < 1) throw NumericError("eigendecompose: empty matrix");
  if (!(measure_weight > 0)) throw NumericError("eigendecompose: measure weight must be positive");

  double spread = n > 1 ? 2 * matrix.off_diagonal.cwiseAbs().maxCoeff() : 0.0;
  double lower = matrix.diagonal.minCoeff() - spread - 1.0;
  bool everything = window.complete();
  double upper = window.upper;
  if (!everything && upper <= lower) {
    EigenSystem empty;
    empty.modes.resize(n, 0);
    empty.measure_weight = measure_weight;
    empty.energy_ceiling = upper;
    return empty;
  }

  std::vector<double> w(n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  std::vector<double> z;
  lapack_int info = 0;

  if (!matrix.periodic) {
    std::vector<double> d(matrix.diagonal.data(), matrix.diagonal.data() + n);
    std::vector<double> e(matrix.off_diagonal.data(), matrix.off_diagonal.data() + n - 1);
    e.push_back(0.0);
    lapack_int count = n;
    if (!everything) {
      std::vector<double> dc = d, ec = e;
      info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'V', n, dc.data(), ec.data(), lower, upper, 0,
                            0, 0.0, &count, w.data(), nullptr, 1, support.data());
      if (info != 0) throw NumericError("tridiagonal eigensolver failed, info = " + std::to_string(info));
    }
    if (count == 0) {
      found = 0;
    } else {
      z.resize(static_cast<std::size_t>(n) * count);
      info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, count,
                            0.0, &found, w.data(), z.data(), n, support.data());
      if (info != 0) throw NumericError("tridiagonal eigensolver failed, info = " + std::to_string(info));
    }
  } else {
    Eigen::MatrixXd a = matrix.to_dense();
    z.resize(static_cast<std::size_t>(n) * n);
    info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', everything ? 'A' : 'V', 'U', n, a.data(), n, lower,
                          upper, 0, 0, 0.0, &found, w.data(), z.data(), n, support.data());
    if (info != 0) throw NumericError("symmetric eigensolver failed, info = " + std::to_string(info));
  }

  EigenSystem out;
  out.measure_weight = measure_weight;
  out.energy_ceiling = everything ? std::numeric_limits<double>::infinity() : upper;
  out.energies = Eigen::Map<Eigen::VectorXd>(w.data(), found);
  out.modes = Eigen::Map<Eigen::MatrixXd>(z.data(), n, found) / std::sqrt(measure_weight);

  // Residual check on the unit-norm vectors.
  double scale = std::sqrt(measure_weight);
  for (lapack_int k = 0; k < found; ++k) {
    Eigen::VectorXd v = out.modes.col(k) * scale;
    double residual = (matrix.apply(v) - out.energies(k) * v).norm();
    if (!(residual <= 1e-8 * (std::abs(out.energies(k)) + 1.0)))
      throw NumericError("eigenpair " + std::to_string(k) + " residual " + std::to_string(residual) +
                         " too large");
  }
  return out;
}

EigenSystem solve(const SemiclassicalProblem& problem, EnergyWindow window) {
  problem.validate();
  EigenSystem eigs = eigendecompose(assemble_operator(problem), problem.grid.spacing(), window);
  eigs.grid = problem.grid;
  eigs.h = problem.h;
  return eigs;
}

ProjectorKernel spectral_kernel(const EigenSystem& eigs, const Eigen::VectorXd& mode_weights,
                                double tau) {
  if (!eigs.grid) throw std::invalid_argument("spectral_kernel: eigen system carries no grid");
  if (mode_weights.size() != eigs.count())
    throw std::invalid_argument("spectral_kernel: one weight per mode required");
  std::vector<int> keep;
  for (int k = 0; k < eigs.count(); ++k)
    if (mode_weights(k) != 0.0) keep.push_back(k);
  const int n = static_cast<int>(eigs.modes.rows());
  Eigen::MatrixXd left(n, keep.size());
  Eigen::MatrixXd right(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    left.col(c) = eigs.modes.col(keep[c]) * mode_weights(keep[c]);
    right.col(c) = eigs.modes.col(keep[c]);
  }
  ProjectorKernel kernel{Eigen::MatrixXd(n, n), *eigs.grid, tau, eigs.h};
  kernel.values.noalias() = left * right.transpose();
  return kernel;
}

ProjectorKernel projector_kernel(const EigenSystem& eigs, double tau) {
  if (tau > eigs.energy_ceiling)
    throw NumericError("projector_kernel: tau = " + std::to_string(tau) +
                       " lies above the retained energy window " +
                       std::to_string(eigs.energy_ceiling));
  Eigen::VectorXd w(eigs.count());
  for (int k = 0; k < eigs.count(); ++k) w(k) = eigs.energies(k) <= tau ? 1.0 : 0.0;
  return spectral_kernel(eigs, w, tau);
}

KernelDiagnostics diagnose(const ProjectorKernel& kernel) {
  const Eigen::MatrixXd& k = kernel.values;
  KernelDiagnostics d;
  double scale = std::max(k.cwiseAbs().maxCoeff(), 1e-300);
  d.symmetric = (k - k.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  Eigen::MatrixXd sq = k * k * kernel.dx();
  d.idempotence_defect = (sq - k).cwiseAbs().maxCoeff() / scale;
  d.min_diagonal = k.diagonal().minCoeff();
  d.trace = k.diagonal().sum() * kernel.dx();
  return d;
}

namespace {

std::vector<int> support_indices(const Grid& g, const CutoffFunction& psi) {
  std::vector<int> idx;
  for (int i = 0; i < g.size(); ++i)
    if (psi(g.x(i)) != 0.0) idx.push_back(i);
  return idx;
}

double nuclear_norm_of_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  // trace norm of a * b^T through thin QR factors
  if (a.cols() == 0) return 0.0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qa(a), qb(b);
  int k = static_cast<int>(std::min(a.rows(), a.cols()));
  int l = static_cast<int>(std::min(b.rows(), b.cols()));
  Eigen::MatrixXd ra = qa.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::MatrixXd rb = qb.matrixQR().topRows(l).triangularView<Eigen::Upper>();
  Eigen::MatrixXd core = ra * rb.transpose();
  return Eigen::BDCSVD<Eigen::MatrixXd>(core).singularValues().sum();
}

Eigen::MatrixXd weighted_modes(const EigenSystem& eigs, const std::vector<int>& cols,
                               const CutoffFunction& psi) {
  const Grid& g = *eigs.grid;
  Eigen::MatrixXd out(eigs.modes.rows(), cols.size());
  double s = std::sqrt(eigs.measure_weight);
  for (int i = 0; i < g.size(); ++i) {
    double p = psi(g.x(i)) * s;
    for (std::size_t c = 0; c < cols.size(); ++c) out(i, c) = p * eigs.modes(i, cols[c]);
  }
  return out;
}

}  // namespace

double sandwich_trace_norm(const ProjectorKernel& kernel, const CutoffFunction& psi1,
                           const CutoffFunction& psi2) {
  auto rows = support_indices(kernel.grid, psi1);
  auto cols = support_indices(kernel.grid, psi2);
  if (rows.empty() || cols.empty()) return 0.0;
  Eigen::MatrixXd m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double pr = psi1(kernel.grid.x(rows[r]));
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(r, c) = pr * kernel.values(rows[r], cols[c]) * psi2(kernel.grid.x(cols[c])) * kernel.dx();
  }
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues().sum();
}

double window_trace_norm(const EigenSystem& eigs, double tau1, double tau2,
                         const CutoffFunction& psi1, const CutoffFunction& psi2) {
  if (tau1 > tau2) throw std::invalid_argument("window_trace_norm: need tau1 <= tau2");
  if (!eigs.grid) throw std::invalid_argument("window_trace_norm: eigen system carries no grid");
  if (tau2 > eigs.energy_ceiling)
    throw NumericError("window_trace_norm: window exceeds retained energies");
  std::vector<int> cols;
  for (int k = 0; k < eigs.count(); ++k)
    if (eigs.energies(k) > tau1 && eigs.energies(k) <= tau2) cols.push_back(k);
  return nuclear_norm_of_product(weighted_modes(eigs, cols, psi1), weighted_modes(eigs, cols, psi2));
}

double sandwich_trace_product(const EigenSystem& eigs, double tau, const CutoffFunction& psi_a,
                              const CutoffFunction& psi_b) {
  if (!eigs.grid) throw std::invalid_argument("sandwich_trace_product: eigen system carries no grid");
  if (tau > eigs.energy_ceiling)
    throw NumericError("sandwich_trace_product: tau exceeds retained energies");
  const Grid& g = *eigs.grid;
  int m = eigs.count_at_or_below(tau);
  Eigen::MatrixXd phi = eigs.modes.leftCols(m);
  Eigen::VectorXd wa(g.size()), wb(g.size());
  for (int i = 0; i < g.size(); ++i) {
    wa(i) = psi_a(g.x(i)) * eigs.measure_weight;
    wb(i) = psi_b(g.x(i)) * eigs.measure_weight;
  }
  Eigen::MatrixXd ma = phi.transpose() * wa.asDiagonal() * phi;
  Eigen::MatrixXd mb = phi.transpose() * wb.asDiagonal() * phi;
  return ma.cwiseProduct(mb).sum();
}

}  // namespace dw
