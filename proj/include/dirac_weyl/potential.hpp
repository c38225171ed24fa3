#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dirac_weyl/expression.hpp"

namespace dw {

/// Scalar potential V with its first two derivatives. The operator studied is
/// -h^2 d^2/dx^2 - V(x), i.e. the symbol a(x, xi) = xi^2 - V(x).
struct Potential {
  std::function<double(double)> value;
  std::function<double(double)> first_derivative;
  std::function<double(double)> second_derivative;
  std::string description;

  double operator()(double x) const { return value(x); }

  static Potential constant(double c);
  static Potential from_expression(const PotentialExpression& expr);
  static Potential from_source(std::string_view source);
};

/// Compare the derivative evaluators against centred finite differences at
/// `samples` random points of [lo, hi]. Returns the worst relative mismatch,
/// measured against max(|f'|, |f''|, 1) so that zeros of the derivative do not
/// blow up the ratio.
double derivative_consistency(const Potential& v, double lo, double hi,
                              int samples = 100, std::uint64_t seed = 7);

/// Named builtin potentials for the `catalog` subcommand.
struct CatalogEntry {
  std::string name;
  std::string expression;
  std::string note;
};
const std::vector<CatalogEntry>& potential_catalog();

}  // namespace dw
