#pragma once

#include <vector>

#include "dirac_weyl/dirac_energy.hpp"
#include "dirac_weyl/fit.hpp"
#include "dirac_weyl/spectral.hpp"

namespace dw {

/// Time cutoff chi-bar and its tabulated transform.
///
/// chi-bar is the normalised autocorrelation of the bump exp(-1/(1 - 4t^2))
/// on (-1/2, 1/2): even, C-infinity, supported in [-1, 1], chi-bar(0) = 1, and
/// its transform is a square, hence nonnegative. The smoothed step
///   step(s) = 1/2 + (1/2pi) * integral_0^s transform(u) du
/// is therefore monotone with values in [0, 1].
class Mollifier {
 public:
  static const Mollifier& canonical();

  double profile(double t) const;
  /// integral chi-bar(t) exp(-i t u) dt.
  double transform(double u) const;
  /// Smoothed Heaviside in the rescaled variable s; step(-s) = 1 - step(s).
  double step(double s) const;

  /// Largest tabulated argument; step is taken as exactly 1 beyond it.
  double table_limit() const { return s_max_; }
  /// 1 - step(table_limit()).
  double tail_mass() const { return tail_mass_; }
  /// Smallest tabulated s with 1 - step(s) <= tol.
  double saturation_point(double tol) const;

  const std::vector<double>& table_s() const { return s_; }
  const std::vector<double>& table_step() const { return step_; }
  const std::vector<double>& table_transform() const { return transform_; }

 private:
  Mollifier();

  double bump_norm_sq_ = 0.0;
  double s_max_ = 0.0;
  double ds_ = 0.0;
  double tail_mass_ = 0.0;
  std::vector<double> s_;
  std::vector<double> step_;
  std::vector<double> transform_;
};

/// Spectral-calculus form of the Tauberian projector weight at eigenvalue
/// lambda: step(-lambda T / h).
double tauberian_weight(const Mollifier& m, double lambda, double h, double T);

struct MollifiedProjector {
  std::vector<double> weights;  // one per retained mode
  double T = 0.0;
  double h = 0.0;
  ProjectorKernel kernel;
};

/// Kernel sum_k w(lambda_k - tau) phi_k phi_k^T. Throws std::invalid_argument
/// for T < 2h and NumericError when `eigs` was truncated below the energy at
/// which the weights become negligible.
MollifiedProjector mollified_projector(const EigenSystem& eigs, const Mollifier& m, double h,
                                       double T, double tau = 0.0);

/// Energy above tau beyond which every weight is below 1e-12.
double mollifier_energy_reach(const Mollifier& m, double h, double T);

struct TauberianSweep {
  std::vector<double> T_values;
  std::vector<double> I_mollified;
  std::vector<double> errors;  // |I_sharp - I_mollified|
  std::optional<ExponentFit> fit;
};

/// For each T: |I(sharp) - I(mollified)|, with the log-log slope in T when at
/// least four errors are positive.
TauberianSweep tauberian_energy_error(const EigenSystem& eigs, const SingularWeight& weight,
                                      const CutoffFunction& psi1, const CutoffFunction& psi2,
                                      const Mollifier& m, double h, std::span<const double> T_list,
                                      double sharp_I, double tau = 0.0);

/// Convenience overload: solves the problem with a sufficient energy window.
TauberianSweep tauberian_energy_error(const SemiclassicalProblem& problem,
                                      const SingularWeight& weight, const Mollifier& m,
                                      std::span<const double> T_list);

}  // namespace dw
