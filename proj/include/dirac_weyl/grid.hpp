#pragma once

#include <vector>

namespace dw {

enum class Boundary { dirichlet, periodic };

/// Uniform 1D grid. `n_points` counts nodes including both endpoints, so the
/// spacing is (x_max - x_min) / (n_points - 1) for either boundary type.
///
/// Storage points (the unknowns of the discrete operator) differ:
///  - dirichlet: the n_points - 2 interior nodes (endpoints carry zero);
///  - periodic: the first n_points - 1 nodes (x_max is identified with x_min).
class Grid {
 public:
  Grid(double x_min, double x_max, int n_points, Boundary boundary);

  /// Smallest grid on [x_min, x_max] with spacing <= max_spacing.
  static Grid with_max_spacing(double x_min, double x_max, double max_spacing,
                               Boundary boundary);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int n_points() const { return n_points_; }
  double spacing() const { return spacing_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }
  double length() const { return x_max_ - x_min_; }

  /// Number of storage points.
  int size() const;
  /// Coordinate of storage point i.
  double x(int i) const;
  std::vector<double> points() const;

  /// Signed index offset i - j; minimal image on periodic grids.
  int offset(int i, int j) const;
  /// Signed displacement x_i - x_j; minimal image on periodic grids.
  double displacement(int i, int j) const { return offset(i, j) * spacing_; }

 private:
  double x_min_;
  double x_max_;
  int n_points_;
  double spacing_;
  Boundary boundary_;
};

}  // namespace dw
