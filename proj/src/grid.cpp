#include "dirac_weyl/grid.hpp"

#include <cmath>
#include <string>

#include "dirac_weyl/errors.hpp"

namespace dw {

Grid::Grid(double x_min, double x_max, int n_points, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), boundary_(boundary) {
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("grid: need finite x_min < x_max");
  if (n_points < 16) throw ConfigError("grid: n_points must be at least 16, got " + std::to_string(n_points));
  spacing_ = (x_max - x_min) / (n_points - 1);
}

Grid Grid::with_max_spacing(double x_min, double x_max, double max_spacing, Boundary boundary) {
  if (!(max_spacing > 0)) throw ConfigError("grid: max spacing must be positive");
  double cells = std::ceil((x_max - x_min) / max_spacing - 1e-12);
  if (cells > 1e8) throw ConfigError("grid: spacing too small for the interval");
  int n = static_cast<int>(cells) + 1;
  if (n < 16) n = 16;
  return Grid(x_min, x_max, n, boundary);
}

int Grid::size() const { return periodic() ? n_points_ - 1 : n_points_ - 2; }

double Grid::x(int i) const {
  int node = periodic() ? i : i + 1;
  return x_min_ + node * spacing_;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(size());
  for (int i = 0; i < size(); ++i) out[i] = x(i);
  return out;
}

int Grid::offset(int i, int j) const {
  int d = i - j;
  if (periodic()) {
    int n = size();
    d = ((d % n) + n) % n;
    if (d > n / 2) d -= n;
  }
  return d;
}

}  // namespace dw
