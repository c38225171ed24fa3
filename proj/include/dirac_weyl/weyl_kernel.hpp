#pragma once

#include <span>

#include "dirac_weyl/potential.hpp"

namespace dw {

/// Constant-coefficient symbol xi^2 - r^2 frozen at one point: the energy shell
/// is the ball |xi| <= momentum_radius.
struct FrozenSymbol {
  int dimension = 1;
  double momentum_radius = 0.0;
  double h = 1.0;

  /// r = sqrt(max(V(y) + tau, 0)).
  static FrozenSymbol at(const Potential& v, double y, double tau, double h);
};

/// (2 pi h)^{-1} * integral over |xi| <= r of exp(i z xi / h) d xi,
/// i.e. sin(r z / h) / (pi z), continuous at z = 0.
double weyl_kernel_1d(const FrozenSymbol& symbol, double z);

/// Same integral in dimension 1..3 by adaptive radial quadrature.
/// Throws NumericError if the quadrature misses `tolerance` (relative to the
/// z = 0 value).
double weyl_kernel_numeric(const FrozenSymbol& symbol, std::span<const double> z,
                           double tolerance = 1e-11);

/// Volume of the unit ball in dimension d.
double unit_ball_volume(int d);

}  // namespace dw
