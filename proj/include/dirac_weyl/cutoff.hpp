#pragma once

#include <limits>

#include "dirac_weyl/profiles.hpp"

namespace dw {

/// Smooth cutoff: supported in [center - width, center + width] and equal to 1
/// on [center - width/2, center + width/2].
class CutoffFunction {
 public:
  CutoffFunction(double center, double width);

  /// psi == 1 everywhere.
  static CutoffFunction unity();

  double operator()(double x) const;

  double center() const { return center_; }
  double width() const { return width_; }
  bool bounded() const { return width_ < std::numeric_limits<double>::infinity(); }
  double support_min() const { return center_ - width_; }
  double support_max() const { return center_ + width_; }

 private:
  double center_;
  double width_;
};

}  // namespace dw
