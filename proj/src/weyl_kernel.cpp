#include "dirac_weyl/weyl_kernel.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "dirac_weyl/errors.hpp"

namespace dw {

namespace {

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

FrozenSymbol FrozenSymbol::at(const Potential& v, double y, double tau, double h) {
  return {1, std::sqrt(std::max(v(y) + tau, 0.0)), h};
}

double weyl_kernel_1d(const FrozenSymbol& symbol, double z) {
  if (symbol.dimension != 1) throw std::invalid_argument("weyl_kernel_1d: dimension must be 1");
  const double r = symbol.momentum_radius;
  const double h = symbol.h;
  double u = r * z / h;
  if (std::abs(u) < 1e-6) return r / (std::numbers::pi * h) * (1.0 - u * u / 6.0);
  return std::sin(u) / (std::numbers::pi * z);
}

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be positive");
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double weyl_kernel_numeric(const FrozenSymbol& symbol, std::span<const double> z,
                           double tolerance) {
  const int d = symbol.dimension;
  if (d < 1 || d > 3) throw std::invalid_argument("weyl_kernel_numeric: dimension must be 1..3");
  if (static_cast<int>(z.size()) != d)
    throw std::invalid_argument("weyl_kernel_numeric: z must have `dimension` components");
  const double r = symbol.momentum_radius;
  const double h = symbol.h;
  const double prefactor = std::pow(2 * std::numbers::pi * h, -d);
  const double at_zero = unit_ball_volume(d) * std::pow(r, d) * prefactor;
  if (r == 0.0) return 0.0;

  double norm = 0.0;
  for (double c : z) norm += c * c;
  const double s = std::sqrt(norm) / h;
  if (s * r < 1e-8) return at_zero;

  auto radial = [&](double rho) -> double {
    double t = s * rho;
    switch (d) {
      case 1: return 2.0 * std::cos(t);
      case 2: return 2 * std::numbers::pi * rho * boost::math::cyl_bessel_j(0, t);
      default: return 4 * std::numbers::pi * rho * rho * (t == 0.0 ? 1.0 : std::sin(t) / t);
    }
  };

  // Split [0, r] into pieces of about one oscillation each.
  int pieces = std::max(1, static_cast<int>(std::ceil(s * r / std::numbers::pi)));
  // Each piece gets a 61-point Kronrod and a 30-point Gauss rule; their
  // difference is the error estimate.
  double total = 0.0, error = 0.0;
  for (int k = 0; k < pieces; ++k) {
    double a = r * k / pieces, b = r * (k + 1) / pieces;
    double fine = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(radial, a, b, 0);
    double coarse = boost::math::quadrature::gauss<double, 30>::integrate(radial, a, b);
    total += fine;
    error += std::abs(fine - coarse);
  }
  double value = total * prefactor;
  error *= prefactor;
  if (error > tolerance * at_zero)
    throw NumericError("weyl_kernel_numeric: requested tolerance " + format_sci(tolerance) +
                       ", achieved " + format_sci(error / at_zero));
  return value;
}

}  // namespace dw
