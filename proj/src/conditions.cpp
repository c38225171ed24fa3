#include "dirac_weyl/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirac_weyl/errors.hpp"

namespace dw {

namespace {

std::vector<double> sample_points(const SemiclassicalProblem& p, ConditionRegion region) {
  std::vector<double> all = p.grid.points();
  if (region == ConditionRegion::grid || !p.psi1.bounded() || !p.psi2.bounded()) return all;
  std::vector<double> inside;
  for (double x : all)
    if (p.psi1(x) > 0.0 || p.psi2(x) > 0.0) inside.push_back(x);
  return inside.empty() ? all : inside;
}

// min over xi of sum_{k <= n} |d_xi^k (xi^2 - E)|, E = V + tau
double xi_sum_minimum(double e, int n) {
  if (n >= 2) return xi_sum_minimum(e, 1) + 2.0;  // |d_xi^2 a| = 2, higher ones vanish
  if (e <= 0.0) return -e;
  if (n == 0) return 0.0;
  return std::min(e, 2.0 * std::sqrt(e));
}

}  // namespace

ConditionReport check_conditions(const SemiclassicalProblem& problem, double epsilon,
                                 ConditionRegion region) {
  const auto xs = sample_points(problem, region);
  const Potential& v = problem.potential;
  const double inf = std::numeric_limits<double>::infinity();
  double shell = inf, vmin = inf, grad = inf, hess = inf;
  double xi_min[4] = {inf, inf, inf, inf};
  for (double x : xs) {
    double e = v(x) + problem.tau;
    double v0 = v(x), v1 = v.first_derivative(x), v2 = v.second_derivative(x);
    if (e >= 0.0) shell = std::min(shell, 2.0 * std::sqrt(e));
    vmin = std::min(vmin, v0);
    grad = std::min(grad, std::abs(v0) + std::abs(v1));
    hess = std::min(hess, std::abs(v0) + std::abs(v1) + std::abs(v2));
    for (int n = 0; n < 4; ++n) xi_min[n] = std::min(xi_min[n], xi_sum_minimum(e, n));
  }
  ConditionReport r;
  r.epsilon_used = epsilon;
  r.region = region == ConditionRegion::grid ? "grid" : "cutoff_support";
  r.microhyperbolic_xi = {shell >= 2.0 * std::sqrt(epsilon), shell};
  r.v_positive = {vmin >= epsilon, vmin};
  r.gradient = {grad >= epsilon, grad};
  r.hessian = {hess >= epsilon, hess};
  for (int n = 0; n < 4; ++n) r.xi_derivatives[n] = {xi_min[n] >= epsilon, xi_min[n]};
  return r;
}

ScalingField scaling_field(const SemiclassicalProblem& problem, ScalingVariant variant,
                           double epsilon) {
  ScalingField f;
  f.variant = variant;
  const double h = problem.h;
  f.floor = variant == ScalingVariant::full_gradient ? std::sqrt(h) : std::cbrt(h * h);
  for (double x : problem.grid.points()) {
    double v = problem.potential(x);
    double e = v + problem.tau;
    double gamma, rho;
    switch (variant) {
      case ScalingVariant::xi_gradient:
        gamma = epsilon * (4.0 * std::max(e, 0.0) + std::max(-e, 0.0)) + f.floor;
        rho = std::sqrt(gamma);
        break;
      case ScalingVariant::full_gradient: {
        double v1 = problem.potential.first_derivative(x);
        gamma = epsilon * std::sqrt(4.0 * std::max(e, 0.0) + v1 * v1 + std::max(-e, 0.0)) + f.floor;
        rho = gamma;
        break;
      }
      case ScalingVariant::schrodinger:
        gamma = epsilon * std::abs(v) + f.floor;
        rho = std::sqrt(gamma);
        break;
      default:
        throw ConfigError("scaling_field: unsupported variant");
    }
    f.gamma_values.push_back(gamma);
    f.rho_values.push_back(rho);
  }
  return f;
}

ScalingVariant parse_scaling_variant(const std::string& name) {
  if (name == "xi_gradient") return ScalingVariant::xi_gradient;
  if (name == "full_gradient") return ScalingVariant::full_gradient;
  if (name == "schrodinger") return ScalingVariant::schrodinger;
  throw ConfigError("unknown scaling variant '" + name + "'");
}

}  // namespace dw
