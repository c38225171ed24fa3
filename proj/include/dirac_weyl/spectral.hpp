#pragma once

#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "dirac_weyl/cutoff.hpp"
#include "dirac_weyl/grid.hpp"
#include "dirac_weyl/potential.hpp"

namespace dw {

/// One instance of the 1D problem: operator -h^2 d^2/dx^2 - V on `grid`,
/// spectral level tau, spatial cutoffs psi1 and psi2.
struct SemiclassicalProblem {
  Potential potential;
  double h = 0.1;
  Grid grid{-1.0, 1.0, 16, Boundary::periodic};
  CutoffFunction psi1 = CutoffFunction::unity();
  CutoffFunction psi2 = CutoffFunction::unity();
  double tau = 0.0;
  int points_per_wavelength = 8;

  /// Largest admissible spacing, h / (ppw * sqrt(max(V, 0) + 1)), with the
  /// maximum taken over the storage points of `grid`.
  double max_spacing() const;

  /// Throws ConfigError when the grid under-resolves the semiclassical
  /// wavelength (the message names the minimal n_points) or a cutoff comes
  /// within 4 spacings of a Dirichlet boundary.
  void validate() const;
};

/// Smallest grid satisfying the resolution rule of `problem` on the given
/// interval; iterates because max V depends on the sampled points.
Grid resolve_grid(const Potential& v, double h, double x_min, double x_max,
                  Boundary boundary, int points_per_wavelength);

/// Discrete operator on the storage points: a symmetric tridiagonal matrix,
/// plus the two corner entries (equal to the off-diagonal value) when periodic.
struct OperatorMatrix {
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;  // size n - 1
  bool periodic = false;

  int size() const { return static_cast<int>(diagonal.size()); }
  Eigen::MatrixXd to_dense() const;
  /// y = A x
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

OperatorMatrix assemble_operator(const SemiclassicalProblem& problem);

/// Which eigenpairs to retain. Default: the whole spectrum.
struct EnergyWindow {
  double upper = std::numeric_limits<double>::infinity();

  static EnergyWindow all() { return {}; }
  static EnergyWindow up_to(double e) { return {e}; }
  bool complete() const { return upper == std::numeric_limits<double>::infinity(); }
};

/// Ascending eigenpairs. Column k of `modes` is the k-th eigenfunction sampled
/// at the storage points, normalised so that sum_i phi_k(x_i)^2 * dx = 1.
struct EigenSystem {
  Eigen::VectorXd energies;
  Eigen::MatrixXd modes;
  double measure_weight = 1.0;
  /// Every eigenvalue <= energy_ceiling is retained.
  double energy_ceiling = std::numeric_limits<double>::infinity();
  std::optional<Grid> grid;
  double h = std::numeric_limits<double>::quiet_NaN();

  int count() const { return static_cast<int>(energies.size()); }
  int count_at_or_below(double tau) const;
};

/// Full (or windowed) symmetric eigendecomposition. Tridiagonal matrices go
/// through an MRRR tridiagonal solver, periodic ones through a dense symmetric
/// solver. Throws NumericError on solver failure or a residual above
/// 1e-8 * (|lambda| + 1).
EigenSystem eigendecompose(const OperatorMatrix& matrix, double measure_weight,
                           EnergyWindow window = EnergyWindow::all());

/// assemble_operator + eigendecompose, with grid and h attached.
EigenSystem solve(const SemiclassicalProblem& problem,
                  EnergyWindow window = EnergyWindow::all());

/// Samples e(x_i, x_j, tau) of a spectral projector or a spectral function of
/// the operator.
struct ProjectorKernel {
  Eigen::MatrixXd values;
  Grid grid;
  double tau = 0.0;
  double h = std::numeric_limits<double>::quiet_NaN();

  double dx() const { return grid.spacing(); }
};

ProjectorKernel projector_kernel(const EigenSystem& eigs, double tau);

/// sum_k f(lambda_k) phi_k(x_i) phi_k(x_j) over retained modes with f != 0.
ProjectorKernel spectral_kernel(const EigenSystem& eigs, const Eigen::VectorXd& mode_weights,
                                double tau);

struct KernelDiagnostics {
  bool symmetric = false;
  double idempotence_defect = 0.0;  // max |K dx K - K| / max |K|
  double min_diagonal = 0.0;
  double trace = 0.0;               // sum_i K_ii dx
};

/// O(n^3): meant for tests and small grids.
KernelDiagnostics diagnose(const ProjectorKernel& kernel);

/// Trace norm of the matrix psi1(x_i) K_ij psi2(x_j) dx.
double sandwich_trace_norm(const ProjectorKernel& kernel, const CutoffFunction& psi1,
                           const CutoffFunction& psi2);

/// Trace norm of psi1 (E(tau2) - E(tau1)) psi2, computed from the modes.
double window_trace_norm(const EigenSystem& eigs, double tau1, double tau2,
                         const CutoffFunction& psi1, const CutoffFunction& psi2);

/// tr(E(tau) psi_a E(tau) psi_b) computed from the modes, independently of any
/// kernel matrix. Equals the squared Hilbert-Schmidt norm of sqrt(psi_a) E sqrt(psi_b).
double sandwich_trace_product(const EigenSystem& eigs, double tau, const CutoffFunction& psi_a,
                              const CutoffFunction& psi_b);

}  // namespace dw
