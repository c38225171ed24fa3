#include "dirac_weyl/weyl_predictor.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace dw {

namespace {

double shell_radius(const Potential& v, double x, double tau) {
  return std::sqrt(std::max(v(x) + tau, 0.0));
}

// Transform coefficient for unit amplitude; the amplitude enters linearly.
double unit_coefficient(const SingularWeight& w) {
  SingularWeight unit = w;
  unit.amplitude = [](double) { return 1.0; };
  return fourier_hat(unit, 0.0).coefficient;
}

double pair_integral(double kappa, double r) {
  // double integral over |xi|, |eta| < r of |xi - eta|^{kappa - 1}
  return std::pow(2.0, kappa + 2.0) * std::pow(r, kappa + 1.0) / (kappa * (kappa + 1.0));
}

}  // namespace

double weyl_density(const Potential& v, double x, const SingularWeight& w, double tau) {
  double r = shell_radius(v, x, tau);
  if (r == 0.0) return 0.0;
  return 0.5 * unit_coefficient(w) * w.amplitude(x) * pair_integral(w.kappa, r);
}

double weyl_density_numeric(const FourierWeight& transform, double radius) {
  if (radius <= 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double zeta) { return transform(zeta) * (2.0 * radius - zeta); };
  return ts.integrate(f, 0.0, 2.0 * radius);
}

WeylPrediction weyl_leading(const SemiclassicalProblem& problem, const SingularWeight& w) {
  const Grid& g = problem.grid;
  const double unit = unit_coefficient(w);
  WeylPrediction p;
  p.g_values.resize(g.size());
  double total = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    double x = g.x(i);
    double r = shell_radius(problem.potential, x, problem.tau);
    double gx = r == 0.0 ? 0.0 : 0.5 * unit * w.amplitude(x) * pair_integral(w.kappa, r);
    p.g_values[i] = gx;
    total += gx * problem.psi1(x) * problem.psi2(x);
  }
  p.leading_coefficient = total * g.spacing();
  p.power = -1.0 - w.kappa;
  p.h = problem.h;
  p.predicted_I = p.leading_coefficient * std::pow(problem.h, p.power);
  return p;
}

double smooth_leading_coefficient(const SemiclassicalProblem& problem,
                                  const std::function<double(double, double)>& omega) {
  const Grid& g = problem.grid;
  double total = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    double x = g.x(i);
    double r = shell_radius(problem.potential, x, problem.tau);
    if (r == 0.0) continue;
    total += 2.0 * r * omega(x, x) * problem.psi1(x) * problem.psi2(x);
  }
  return total * g.spacing() / (2.0 * std::numbers::pi);
}

}  // namespace dw
