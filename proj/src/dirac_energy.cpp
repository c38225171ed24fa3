#include "dirac_weyl/dirac_energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dirac_weyl/errors.hpp"
#include "dirac_weyl/profiles.hpp"

namespace dw {

std::vector<double> singular_offset_weights(double kappa, double dx, int max_offset,
                                            DiagonalRule rule) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("singular weights need 0 < kappa < 1, got " + std::to_string(kappa));
  if (!(dx > 0.0)) throw std::invalid_argument("singular weights need dx > 0");
  std::vector<double> w(std::max(max_offset, 0) + 1);
  if (rule == DiagonalRule::excise) {
    w[0] = 0.0;
    for (int m = 1; m <= max_offset; ++m) w[m] = dx * std::pow(m * dx, -kappa);
    return w;
  }
  const double norm = 1.0 / ((1.0 - kappa) * (2.0 - kappa));
  auto big_g = [&](double s) { return std::pow(s, 2.0 - kappa) * norm; };
  const double k2 = kappa * (kappa + 1.0) / 12.0;
  const double k4 = kappa * (kappa + 1.0) * (kappa + 2.0) * (kappa + 3.0) / 360.0;
  const double scale = std::pow(dx, 1.0 - kappa);
  w[0] = 2.0 * norm * scale;
  for (int m = 1; m <= max_offset; ++m) {
    double c;
    if (m <= 64) {
      c = big_g(m + 1.0) - 2.0 * big_g(m) + big_g(m - 1.0);
    } else {
      double inv2 = 1.0 / (double(m) * m);
      c = std::pow(m, -kappa) * (1.0 + k2 * inv2 + k4 * inv2 * inv2);
    }
    w[m] = c * scale;
  }
  return w;
}

namespace {

struct Support {
  std::vector<int> index;
  std::vector<double> value;
};

Support support_of(const Grid& g, const CutoffFunction& psi) {
  Support s;
  for (int i = 0; i < g.size(); ++i) {
    double v = psi(g.x(i));
    if (v != 0.0) {
      s.index.push_back(i);
      s.value.push_back(v);
    }
  }
  return s;
}

double wrap(const Grid& g, double x) {
  if (!g.periodic()) return x;
  double period = g.length();
  double t = std::fmod(x - g.x_min(), period);
  if (t < 0) t += period;
  return g.x_min() + t;
}

void check_quadrature(const EnergyQuadrature& q) {
  const ProjectorKernel& k = q.kernel;
  if (!(q.weight.kappa > 0.0 && q.weight.kappa < 1.0))
    throw std::invalid_argument("compute_I: kappa must lie in (0, 1), got " +
                                std::to_string(q.weight.kappa));
  if (k.values.rows() != k.grid.size() || k.values.cols() != k.grid.size())
    throw std::invalid_argument("compute_I: kernel shape does not match its grid");
  if (std::isfinite(k.h) && k.dx() * 8.0 > k.h * (1 + 1e-9))
    throw ConfigError("compute_I: grid spacing " + std::to_string(k.dx()) +
                      " under-resolves h = " + std::to_string(k.h) + " (need spacing <= h/8)");
}

template <class Extra>
double singular_sum(const EnergyQuadrature& q, Extra extra) {
  check_quadrature(q);
  const ProjectorKernel& k = q.kernel;
  const Grid& g = k.grid;
  const double dx = g.spacing();
  Support rows = support_of(g, q.psi2);
  Support cols = support_of(g, q.psi1);
  if (rows.index.empty() || cols.index.empty()) return 0.0;
  const auto w = singular_offset_weights(q.weight.kappa, dx, g.size(), q.diagonal_rule);

  double total = 0.0;
  for (std::size_t a = 0; a < rows.index.size(); ++a) {
    const int i = rows.index[a];
    double row = 0.0;
    for (std::size_t b = 0; b < cols.index.size(); ++b) {
      const int j = cols.index[b];
      const int m = g.offset(i, j);
      const double wm = w[std::abs(m)];
      if (wm == 0.0) continue;
      const double z = m * dx;
      const double factor = extra(z);
      if (factor == 0.0) continue;
      const double e = k.values(i, j);
      const double mid = wrap(g, g.x(j) + 0.5 * z);
      row += wm * factor * q.weight.prefactor(mid, m < 0 ? -1.0 : 1.0) * e * e * cols.value[b];
    }
    total += row * rows.value[a];
  }
  return total * dx;
}

}  // namespace

double compute_I(const EnergyQuadrature& q) {
  return singular_sum(q, [](double) { return 1.0; });
}

double compute_I_truncated(const EnergyQuadrature& q, double gamma) {
  if (!(gamma >= 2.0 * q.kernel.dx()))
    throw std::invalid_argument("compute_I_truncated: gamma = " + std::to_string(gamma) +
                                " is below twice the grid spacing");
  return singular_sum(q, [gamma](double z) { return plateau(z / gamma); });
}

double compute_I_smooth(const ProjectorKernel& kernel,
                        const std::function<double(double, double)>& omega,
                        const CutoffFunction& psi1, const CutoffFunction& psi2) {
  const Grid& g = kernel.grid;
  Support rows = support_of(g, psi2);
  Support cols = support_of(g, psi1);
  double total = 0.0;
  for (std::size_t a = 0; a < rows.index.size(); ++a) {
    const int i = rows.index[a];
    const double x = g.x(i);
    double row = 0.0;
    for (std::size_t b = 0; b < cols.index.size(); ++b) {
      const int j = cols.index[b];
      const double e = kernel.values(i, j);
      row += omega(x, g.x(j)) * e * e * cols.value[b];
    }
    total += row * rows.value[a];
  }
  return total * g.spacing() * g.spacing();
}

}  // namespace dw
