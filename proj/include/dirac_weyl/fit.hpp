#pragma once

#include <span>
#include <utility>
#include <vector>

namespace dw {

/// log(value) = slope * log(h) + intercept, by ordinary least squares.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int n_points = 0;
};

/// Requires at least 4 points; throws ConfigError naming the h of any
/// nonpositive value.
ExponentFit fit_exponent(std::span<const std::pair<double, double>> pairs);
ExponentFit fit_exponent(std::span<const double> h, std::span<const double> values);

}  // namespace dw
