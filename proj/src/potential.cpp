#include "dirac_weyl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dw {

Potential Potential::constant(double c) {
  auto zero = [](double) { return 0.0; };
  return {[c](double) { return c; }, zero, zero, "constant"};
}

Potential Potential::from_expression(const PotentialExpression& expr) {
  return {[e = expr.ast](double x) { return e.evaluate(x); },
          [e = expr.first](double x) { return e.evaluate(x); },
          [e = expr.second](double x) { return e.evaluate(x); }, expr.source};
}

Potential Potential::from_source(std::string_view source) {
  return from_expression(parse_potential(source));
}

double derivative_consistency(const Potential& v, double lo, double hi, int samples,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(lo, hi);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double x = pick(rng);
    double step = 1e-4 * std::max(1.0, std::abs(x));
    double f0 = v.value(x);
    double fp = v.value(x + step), fm = v.value(x - step);
    double fp2 = v.value(x + 2 * step), fm2 = v.value(x - 2 * step);
    double d1 = (8 * (fp - fm) - (fp2 - fm2)) / (12 * step);
    double d2 = (16 * (fp + fm) - (fp2 + fm2) - 30 * f0) / (12 * step * step);
    double a1 = v.first_derivative(x);
    double a2 = v.second_derivative(x);
    double scale = std::max({std::abs(a1), std::abs(a2), 1.0});
    worst = std::max({worst, std::abs(d1 - a1) / scale, std::abs(d2 - a2) / scale});
  }
  return worst;
}

const std::vector<CatalogEntry>& potential_catalog() {
  static const std::vector<CatalogEntry> entries{
      {"const", "1", "flat, non-degenerate everywhere"},
      {"well", "1 - x^2", "single well, turning points at +-1"},
      {"quartic", "1 - x^4", "flat-bottomed well, turning points at +-1"},
      {"gaussian", "exp(-x^2)", "positive, decays to 0 at infinity"},
      {"double_well", "0.5 - (x^2 - 1)^2", "two wells at +-1, barrier at 0"},
  };
  return entries;
}

}  // namespace dw
