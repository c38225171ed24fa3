#pragma once

#include <map>
#include <string>
#include <vector>

#include "dirac_weyl/spectral.hpp"

namespace dw {

struct ConditionFlag {
  bool holds = false;
  double margin = 0.0;
};

/// Non-degeneracy conditions of the symbol a = xi^2 - V sampled on the grid.
///  - microhyperbolic_xi: margin = inf over shell points of |d_xi a| = 2 sqrt(V + tau);
///    holds when margin >= 2 sqrt(epsilon) (i.e. |xi|^2 >= epsilon on the shell).
///  - v_positive:         inf V >= epsilon.
///  - gradient:           inf (|V| + |V'|) >= epsilon.
///  - hessian:            inf (|V| + |V'| + |V''|) >= epsilon.
///  - xi_derivatives[n]:  inf over (x, xi) of sum_{k<=n} |d_xi^k a| >= epsilon.
struct ConditionReport {
  ConditionFlag microhyperbolic_xi;
  ConditionFlag v_positive;
  ConditionFlag gradient;
  ConditionFlag hessian;
  std::map<int, ConditionFlag> xi_derivatives;
  double epsilon_used = 0.1;
  std::string region;  // "cutoff_support" or "grid"
};

enum class ConditionRegion { cutoff_support, grid };

ConditionReport check_conditions(const SemiclassicalProblem& problem, double epsilon = 0.1,
                                 ConditionRegion region = ConditionRegion::cutoff_support);

enum class ScalingVariant {
  /// gamma = eps (|d_xi a|^2 + |a|) + h^{2/3}, rho = gamma^{1/2}
  xi_gradient,
  /// gamma = eps (|grad_{x,xi} a|^2 + |a|)^{1/2} + h^{1/2}, rho = gamma
  full_gradient,
  /// gamma = eps |V| + h^{2/3}, rho = gamma^{1/2}
  schrodinger,
};

struct ScalingField {
  std::vector<double> gamma_values;
  std::vector<double> rho_values;
  ScalingVariant variant = ScalingVariant::schrodinger;
  double floor = 0.0;
};

/// Momentum dependence is evaluated on the shell xi^2 = max(V + tau, 0).
ScalingField scaling_field(const SemiclassicalProblem& problem, ScalingVariant variant,
                           double epsilon = 0.1);

ScalingVariant parse_scaling_variant(const std::string& name);

}  // namespace dw
