#pragma once

#include <functional>
#include <span>

namespace dw {

enum class WeightProfile { pure_power, custom };

/// Homogeneous singular weight Omega(x, z) = amplitude(x) * angular(z/|z|) * |z|^{-kappa}
/// on the line (unit vectors are +1 and -1). Only even angular factors are
/// accepted; for `pure_power` the angular factor is 1.
struct SingularWeight {
  double kappa = 0.5;
  std::function<double(double)> amplitude;
  WeightProfile profile = WeightProfile::pure_power;
  std::function<double(double)> custom_angular;

  static SingularWeight pure_power(double kappa, double amplitude = 1.0);
  static SingularWeight pure_power(double kappa, std::function<double(double)> amplitude);
  static SingularWeight custom(double kappa, std::function<double(double)> amplitude,
                               std::function<double(double)> angular);

  double angular(double direction) const;
  /// amplitude(x) * angular value, i.e. Omega(x, z) * |z|^kappa.
  double prefactor(double x, double direction) const;
  /// Copy with amplitude multiplied by `factor`.
  SingularWeight scaled(double factor) const;
};

/// Omega(x, z); throws std::invalid_argument at z = 0.
double evaluate_weight(const SingularWeight& w, double x, double z);

/// Transform 2 (2 pi)^{-2} * integral Omega(x, z) exp(i z zeta) dz, which is
/// homogeneous of degree kappa - 1: evaluator(zeta) = coefficient |zeta|^{kappa-1}.
struct FourierWeight {
  double kappa = 0.5;
  double coefficient = 0.0;
  std::function<double(double)> evaluator;

  double operator()(double zeta) const { return evaluator(zeta); }
};

/// integral over the line of |z|^{-kappa} exp(i z zeta) dz at |zeta| = 1:
/// 2 Gamma(1 - kappa) sin(pi kappa / 2).
double power_transform_constant(double kappa);

/// Closed form. Throws std::invalid_argument for kappa >= 1 or kappa <= 0.
FourierWeight fourier_hat(const SingularWeight& w, double x);

/// Numerical transform: truncated oscillatory quadrature plus an asymptotic
/// tail. The returned evaluator recomputes the integral on demand; the
/// coefficient is the value at |zeta| = 1. Every sample in `zeta_samples` is
/// checked for homogeneity against that coefficient; a failed tail expansion
/// throws NumericError naming the offending zeta.
FourierWeight numeric_fourier_hat(const SingularWeight& w, double x,
                                  std::span<const double> zeta_samples);

/// integral_0^inf z^{-kappa} cos(zeta z) dz for zeta > 0, by the same route
/// as numeric_fourier_hat.
double numeric_cosine_power_integral(double kappa, double zeta);

}  // namespace dw
