#pragma once

#include <functional>
#include <vector>

#include "dirac_weyl/cutoff.hpp"
#include "dirac_weyl/singular_weight.hpp"
#include "dirac_weyl/spectral.hpp"

namespace dw {

enum class DiagonalRule {
  /// Product integration in z = x - y: the smooth factor is interpolated
  /// linearly between nodes and |z|^{-kappa} is integrated exactly against each
  /// hat function, so the cells touching the diagonal are exact for frozen e.
  analytic_cell,
  /// Drop the diagonal nodes and use plain trapezoid weights elsewhere.
  excise,
};

struct EnergyQuadrature {
  const ProjectorKernel& kernel;
  SingularWeight weight;
  CutoffFunction psi1;
  CutoffFunction psi2;
  DiagonalRule diagonal_rule = DiagonalRule::analytic_cell;
};

/// I = double integral of Omega((x+y)/2, x-y) e(x,y) psi2(x) e(y,x) psi1(y).
double compute_I(const EnergyQuadrature& q);

/// compute_I with Omega replaced by Omega * plateau((x-y)/gamma).
double compute_I_truncated(const EnergyQuadrature& q, double gamma);

/// Plain product trapezoid of omega(x,y) e(x,y)^2 psi2(x) psi1(y).
double compute_I_smooth(const ProjectorKernel& kernel,
                        const std::function<double(double, double)>& omega,
                        const CutoffFunction& psi1, const CutoffFunction& psi2);

/// Quadrature weights w_m for offsets m = 0..max_offset, so that
/// integral f(z)|z|^{-kappa} dz ~ sum_m w_|m| f(m dx).
std::vector<double> singular_offset_weights(double kappa, double dx, int max_offset,
                                            DiagonalRule rule);

}  // namespace dw
