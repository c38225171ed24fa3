#include "dirac_weyl/fit.hpp"

#include <cmath>
#include <sstream>

#include "dirac_weyl/errors.hpp"

namespace dw {

ExponentFit fit_exponent(std::span<const std::pair<double, double>> pairs) {
  const int n = static_cast<int>(pairs.size());
  if (n < 4) throw ConfigError("fit_exponent: need at least 4 points, got " + std::to_string(n));
  double sx = 0, sy = 0;
  for (auto [h, v] : pairs) {
    if (!(h > 0.0)) {
      std::ostringstream os;
      os << "fit_exponent: nonpositive abscissa h = " << h;
      throw ConfigError(os.str());
    }
    if (!(v > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "fit_exponent: value " << v << " at h = " << h << " is not positive";
      throw ConfigError(os.str());
    }
    sx += std::log(h);
    sy += std::log(v);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (auto [h, v] : pairs) {
    double dx = std::log(h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_exponent: all h values coincide");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (auto [h, v] : pairs) {
    double r = std::log(v) - fit.intercept - fit.slope * std::log(h);
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
  fit.n_points = n;
  return fit;
}

ExponentFit fit_exponent(std::span<const double> h, std::span<const double> values) {
  if (h.size() != values.size()) throw ConfigError("fit_exponent: length mismatch");
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < h.size(); ++i) pairs.emplace_back(h[i], values[i]);
  return fit_exponent(pairs);
}

}  // namespace dw
