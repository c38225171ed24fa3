#include "dirac_weyl/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "dirac_weyl/errors.hpp"

namespace dw {

namespace {

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

// Composite 10-point Gauss-Legendre rule on [a, b].
Nodes composite_gauss(double a, double b, int panels) {
  using rule = boost::math::quadrature::gauss<double, 10>;
  const auto& abs = rule::abscissa();
  const auto& wts = rule::weights();
  Nodes n;
  double len = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * len, half = 0.5 * len;
    for (std::size_t k = 0; k < abs.size(); ++k) {
      n.x.push_back(mid - half * abs[k]);
      n.w.push_back(half * wts[k]);
      n.x.push_back(mid + half * abs[k]);
      n.w.push_back(half * wts[k]);
    }
  }
  return n;
}

// exp(-1/(1 - 4t^2)) on (-1/2, 1/2)
double bump(double t) {
  double u = 1.0 - 4.0 * t * t;
  return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
}

const Nodes& half_nodes() {
  static const Nodes n = composite_gauss(0.0, 0.5, 80);
  return n;
}

// Fourier transform of the bump at frequency u (the bump is even).
double bump_transform(double u) {
  const Nodes& n = half_nodes();
  double s = 0.0;
  for (std::size_t k = 0; k < n.x.size(); ++k) s += n.w[k] * bump(n.x[k]) * std::cos(u * n.x[k]);
  return 2.0 * s;
}

}  // namespace

const Mollifier& Mollifier::canonical() {
  static const Mollifier m;
  return m;
}

Mollifier::Mollifier() {
  {
    const Nodes& n = half_nodes();
    double s = 0.0;
    for (std::size_t k = 0; k < n.x.size(); ++k) s += n.w[k] * bump(n.x[k]) * bump(n.x[k]);
    bump_norm_sq_ = 2.0 * s;
  }

  // step(s) = 1/2 + (1/pi) integral_0^1 profile(t) sin(s t) / t dt, with the
  // profile sampled once on Gauss nodes of [0, 1].
  Nodes t = composite_gauss(0.0, 1.0, 100);
  std::vector<double> weight(t.x.size());
  for (std::size_t k = 0; k < t.x.size(); ++k) weight[k] = t.w[k] * profile(t.x[k]) / t.x[k];

  ds_ = 1.0 / 32.0;
  s_max_ = 512.0;
  const int count = static_cast<int>(std::lround(s_max_ / ds_)) + 1;
  s_.resize(count);
  step_.resize(count);
  transform_.resize(count);
  for (int i = 0; i < count; ++i) {
    double s = i * ds_;
    double acc = 0.0;
    for (std::size_t k = 0; k < t.x.size(); ++k) acc += weight[k] * std::sin(s * t.x[k]);
    s_[i] = s;
    step_[i] = 0.5 + acc / std::numbers::pi;
    transform_[i] = transform(s);
  }
  tail_mass_ = 1.0 - step_.back();
}

double Mollifier::profile(double t) const {
  double a = std::abs(t);
  if (a >= 1.0) return 0.0;
  // autocorrelation: integral over s in [a - 1/2, 1/2] of bump(s) bump(a - s)
  static const Nodes unit = composite_gauss(0.0, 1.0, 40);
  double lo = a - 0.5, len = 1.0 - a;
  double acc = 0.0;
  for (std::size_t k = 0; k < unit.x.size(); ++k) {
    double s = lo + len * unit.x[k];
    acc += unit.w[k] * bump(s) * bump(a - s);
  }
  return acc * len / bump_norm_sq_;
}

double Mollifier::transform(double u) const {
  double b = bump_transform(u);
  return b * b / bump_norm_sq_;
}

double Mollifier::step(double s) const {
  if (std::isnan(s)) return s;
  if (s < 0.0) return 1.0 - step(-s);
  if (s >= s_max_) return 1.0;
  double pos = s / ds_;
  std::size_t i = std::min(static_cast<std::size_t>(pos), s_.size() - 2);
  double t = pos - static_cast<double>(i);
  double p0 = step_[i], p1 = step_[i + 1];
  double d0 = transform_[i] / (2 * std::numbers::pi) * ds_;
  double d1 = transform_[i + 1] / (2 * std::numbers::pi) * ds_;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * p1 +
         (t3 - t2) * d1;
}

double Mollifier::saturation_point(double tol) const {
  if (tail_mass_ > tol) return std::numeric_limits<double>::infinity();
  for (std::size_t i = step_.size(); i-- > 0;)
    if (1.0 - step_[i] > tol) return i + 1 < s_.size() ? s_[i + 1] : s_max_;
  return 0.0;
}

double tauberian_weight(const Mollifier& m, double lambda, double h, double T) {
  if (!(h > 0.0) || !(T > 0.0)) throw std::invalid_argument("tauberian_weight: need h, T > 0");
  return m.step(-lambda * T / h);
}

double mollifier_energy_reach(const Mollifier& m, double h, double T) {
  double s = std::min(m.saturation_point(1e-12), m.table_limit());
  return s * h / T;
}

MollifiedProjector mollified_projector(const EigenSystem& eigs, const Mollifier& m, double h,
                                       double T, double tau) {
  if (!(h > 0.0)) throw std::invalid_argument("mollified_projector: h must be positive");
  if (!(T >= 2.0 * h))
    throw std::invalid_argument("mollified_projector: T = " + std::to_string(T) +
                                " is below 2h = " + std::to_string(2.0 * h));
  double needed = tau + mollifier_energy_reach(m, h, T);
  if (eigs.energy_ceiling < needed)
    throw NumericError("mollified_projector: eigenpairs retained only up to " +
                       std::to_string(eigs.energy_ceiling) + ", weights reach " +
                       std::to_string(needed));
  Eigen::VectorXd w(eigs.count());
  for (int k = 0; k < eigs.count(); ++k) w(k) = tauberian_weight(m, eigs.energies(k) - tau, h, T);
  return {std::vector<double>(w.data(), w.data() + w.size()), T, h, spectral_kernel(eigs, w, tau)};
}

TauberianSweep tauberian_energy_error(const EigenSystem& eigs, const SingularWeight& weight,
                                      const CutoffFunction& psi1, const CutoffFunction& psi2,
                                      const Mollifier& m, double h, std::span<const double> T_list,
                                      double sharp_I, double tau) {
  TauberianSweep out;
  for (double T : T_list) {
    MollifiedProjector mp = mollified_projector(eigs, m, h, T, tau);
    double value = compute_I({mp.kernel, weight, psi1, psi2});
    out.T_values.push_back(T);
    out.I_mollified.push_back(value);
    out.errors.push_back(std::abs(sharp_I - value));
  }
  int positive = static_cast<int>(std::count_if(out.errors.begin(), out.errors.end(),
                                                [](double e) { return e > 0.0; }));
  if (positive >= 4 && positive == static_cast<int>(out.errors.size()))
    out.fit = fit_exponent(out.T_values, out.errors);
  return out;
}

TauberianSweep tauberian_energy_error(const SemiclassicalProblem& problem,
                                      const SingularWeight& weight, const Mollifier& m,
                                      std::span<const double> T_list) {
  if (T_list.empty()) return {};
  double t_min = *std::min_element(T_list.begin(), T_list.end());
  if (!(t_min >= 2.0 * problem.h))
    throw std::invalid_argument("tauberian_energy_error: T below 2h");
  double reach = problem.tau + mollifier_energy_reach(m, problem.h, t_min);
  EigenSystem eigs = solve(problem, EnergyWindow::up_to(reach));
  ProjectorKernel sharp = projector_kernel(eigs, problem.tau);
  double sharp_I = compute_I({sharp, weight, problem.psi1, problem.psi2});
  return tauberian_energy_error(eigs, weight, problem.psi1, problem.psi2, m, problem.h, T_list,
                                sharp_I, problem.tau);
}

}  // namespace dw
