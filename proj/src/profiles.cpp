#include "dirac_weyl/profiles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dirac_weyl/cutoff.hpp"

namespace dw {

namespace {
double flat(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

double smooth_step(double s) {
  if (s <= 0) return 1.0;
  if (s >= 1) return 0.0;
  double a = flat(1.0 - s);
  double b = flat(s);
  return a / (a + b);
}

double plateau(double t) {
  double a = std::abs(t);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return smooth_step(2.0 * a - 1.0);
}

CutoffFunction::CutoffFunction(double center, double width) : center_(center), width_(width) {
  if (!(width > 0)) throw std::invalid_argument("cutoff width must be positive");
  if (!std::isfinite(center)) throw std::invalid_argument("cutoff center must be finite");
}

CutoffFunction CutoffFunction::unity() {
  return CutoffFunction(0.0, std::numeric_limits<double>::infinity());
}

double CutoffFunction::operator()(double x) const {
  if (!bounded()) return 1.0;
  return plateau((x - center_) / width_);
}

}  // namespace dw
