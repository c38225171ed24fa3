#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dirac_weyl/singular_weight.hpp"
#include "dirac_weyl/spectral.hpp"

namespace dw {

struct WeylPrediction {
  std::vector<double> g_values;  // G at the storage points of the grid
  double leading_coefficient = 0.0;
  double power = 0.0;            // -1 - kappa
  std::optional<double> h;
  std::optional<double> predicted_I;
};

/// Pair density G(x) = (1/2) * double integral over |xi|, |eta| < r(x) of
/// Omega-hat(x, xi - eta), r = sqrt(max(V(x) + tau, 0)).
///
/// Omega-hat carries the 2 (2 pi)^{-2} convention of FourierWeight; the
/// density of |e|^2 itself needs (2 pi)^{-2}, hence the 1/2.
double weyl_density(const Potential& v, double x, const SingularWeight& w, double tau);

/// Same density for an arbitrary even transform, via
/// (1/2) * integral_{-2r}^{2r} Omega-hat(zeta) (2r - |zeta|) d zeta.
double weyl_density_numeric(const FourierWeight& transform, double radius);

/// Leading term: integral of G psi1 psi2 over the grid, times h^{-1-kappa}.
WeylPrediction weyl_leading(const SemiclassicalProblem& problem, const SingularWeight& w);

/// (2 pi)^{-1} integral 2 sqrt(max(V + tau, 0)) omega(x, x) psi1 psi2 dx.
double smooth_leading_coefficient(const SemiclassicalProblem& problem,
                                  const std::function<double(double, double)>& omega);

}  // namespace dw
