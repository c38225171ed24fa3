#include "dirac_weyl/singular_weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dirac_weyl/errors.hpp"

namespace dw {

namespace {

constexpr double transform_normalisation = 2.0 / (4 * std::numbers::pi * std::numbers::pi);

void check_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("singular weight: kappa must be positive, got " + std::to_string(kappa));
}

void check_transform_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("transform needs 0 < kappa < 1 in one dimension, got " +
                                std::to_string(kappa));
}

}  // namespace

SingularWeight SingularWeight::pure_power(double kappa, double amplitude) {
  return pure_power(kappa, [amplitude](double) { return amplitude; });
}

SingularWeight SingularWeight::pure_power(double kappa, std::function<double(double)> amplitude) {
  check_kappa(kappa);
  SingularWeight w;
  w.kappa = kappa;
  w.amplitude = std::move(amplitude);
  w.profile = WeightProfile::pure_power;
  return w;
}

SingularWeight SingularWeight::custom(double kappa, std::function<double(double)> amplitude,
                                      std::function<double(double)> angular) {
  check_kappa(kappa);
  if (!angular) throw std::invalid_argument("custom weight needs an angular factor");
  double plus = angular(1.0), minus = angular(-1.0);
  if (std::abs(plus - minus) > 1e-12 * std::max({std::abs(plus), std::abs(minus), 1e-300}))
    throw std::invalid_argument("custom weight: only even angular factors are supported");
  SingularWeight w;
  w.kappa = kappa;
  w.amplitude = std::move(amplitude);
  w.profile = WeightProfile::custom;
  w.custom_angular = std::move(angular);
  return w;
}

double SingularWeight::angular(double direction) const {
  if (profile == WeightProfile::pure_power) return 1.0;
  return custom_angular(direction < 0 ? -1.0 : 1.0);
}

double SingularWeight::prefactor(double x, double direction) const {
  return amplitude(x) * angular(direction);
}

SingularWeight SingularWeight::scaled(double factor) const {
  SingularWeight w = *this;
  w.amplitude = [inner = amplitude, factor](double x) { return factor * inner(x); };
  return w;
}

double evaluate_weight(const SingularWeight& w, double x, double z) {
  if (z == 0.0) throw std::invalid_argument("evaluate_weight: z = 0 is the singular point");
  return w.prefactor(x, z) * std::pow(std::abs(z), -w.kappa);
}

double power_transform_constant(double kappa) {
  check_transform_kappa(kappa);
  return 2.0 * std::tgamma(1.0 - kappa) * std::sin(std::numbers::pi * kappa / 2.0);
}

FourierWeight fourier_hat(const SingularWeight& w, double x) {
  check_transform_kappa(w.kappa);
  if (w.profile == WeightProfile::custom) {
    const double samples[] = {0.5, 1.0, 2.0};
    return numeric_fourier_hat(w, x, samples);
  }
  FourierWeight f;
  f.kappa = w.kappa;
  f.coefficient = transform_normalisation * power_transform_constant(w.kappa) * w.amplitude(x);
  f.evaluator = [c = f.coefficient, k = w.kappa](double zeta) {
    return c * std::pow(std::abs(zeta), k - 1.0);
  };
  return f;
}

double numeric_cosine_power_integral(double kappa, double zeta) {
  check_transform_kappa(kappa);
  if (!(zeta > 0.0) || !std::isfinite(zeta))
    throw std::invalid_argument("numeric_cosine_power_integral: zeta must be positive");
  using boost::math::quadrature::gauss_kronrod;
  const double pi = std::numbers::pi;
  const double half_period = pi / zeta;
  auto f = [&](double z) { return std::pow(z, -kappa) * std::cos(zeta * z); };

  // [0, first zero of the cosine]: endpoint singularity
  boost::math::quadrature::tanh_sinh<double> ts;
  double first_zero = 0.5 * half_period;
  double total = ts.integrate(f, 0.0, first_zero);

  // whole half-periods up to Z, zeros of the cosine as breakpoints
  const int half_periods = 400;
  for (int k = 0; k < half_periods; ++k) {
    double a = first_zero + k * half_period;
    total += gauss_kronrod<double, 31>::integrate(f, a, a + half_period, 10, 1e-15);
  }
  const double big_z = first_zero + half_periods * half_period;

  // integral_Z^inf z^-kappa e^{i zeta z} dz
  //   = -e^{i zeta Z} Z^-kappa / (i zeta) * sum_n (kappa)_n / (i zeta Z)^n
  const double u = zeta * big_z;
  double re = 0.0, im = 0.0;  // sum_n (kappa)_n / (i u)^n
  double term = 1.0;
  double best = 1.0;
  bool converged = false;
  for (int n = 0; n < 200; ++n) {
    double mag = std::abs(term);
    if (mag < 1e-17 * std::abs(re + 1.0)) {
      converged = true;
      break;
    }
    if (n > 0 && mag > best) break;
    best = std::min(best, mag);
    switch (n % 4) {
      case 0: re += term; break;
      case 1: im -= term; break;
      case 2: re -= term; break;
      case 3: im += term; break;
    }
    term *= (kappa + n) / u;
  }
  if (!converged && best > 1e-10)
    throw NumericError("tail expansion diverged at zeta = " + std::to_string(zeta));
  // -e^{i u} / (i zeta) * Z^-kappa * (re + i im); keep the real part
  double amp = std::pow(big_z, -kappa) / zeta;
  double c = std::cos(u), s = std::sin(u);
  // -1/i = i, so value = i e^{iu} (re + i im) * amp
  double real_part = -(s * re + c * im) * amp;
  return total + real_part;
}

FourierWeight numeric_fourier_hat(const SingularWeight& w, double x,
                                  std::span<const double> zeta_samples) {
  check_transform_kappa(w.kappa);
  const double prefactor = transform_normalisation * 2.0 * w.prefactor(x, 1.0);
  const double kappa = w.kappa;
  auto eval = [prefactor, kappa](double zeta) {
    double a = std::abs(zeta);
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    return prefactor * numeric_cosine_power_integral(kappa, a);
  };
  FourierWeight f;
  f.kappa = kappa;
  f.coefficient = eval(1.0);
  for (double zeta : zeta_samples) {
    double got = eval(zeta);
    double expect = f.coefficient * std::pow(std::abs(zeta), kappa - 1.0);
    if (!(std::abs(got - expect) <= 1e-6 * std::abs(expect)))
      throw NumericError("numeric transform is not homogeneous at zeta = " + std::to_string(zeta));
  }
  f.evaluator = eval;
  return f;
}

}  // namespace dw
