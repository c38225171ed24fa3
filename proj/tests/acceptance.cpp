// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dirac_weyl/conditions.hpp"
#include "dirac_weyl/config.hpp"
#include "dirac_weyl/dirac_energy.hpp"
#include "dirac_weyl/errors.hpp"
#include "dirac_weyl/experiment.hpp"
#include "dirac_weyl/expression.hpp"
#include "dirac_weyl/report.hpp"
#include "dirac_weyl/singular_weight.hpp"
#include "dirac_weyl/tauberian.hpp"
#include "dirac_weyl/weyl_kernel.hpp"
#include "oracles.hpp"

using namespace dw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool recorded = false;
  bool pass = false;
  std::string detail;
};

Verdict verdicts[10];

void verdict(int criterion, bool pass, const std::string& detail) {
  verdicts[criterion] = {true, pass, detail};
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

double slope_or_nan(const std::optional<ExponentFit>& f) {
  return f ? f->slope : std::numeric_limits<double>::quiet_NaN();
}

void print_rows(const SweepReport& r) {
  for (const auto& row : r.rows)
    std::printf("    h=%-5g I=%.6e leading=%.6e rel_err=%.4f n=%d (%.1f s)\n", row.h, row.I_exact,
                row.I_weyl_leading, row.rel_err, row.n_points, row.runtime_seconds);
}

const std::vector<double> sweep_h{0.2, 0.14, 0.1, 0.07, 0.05};

ExperimentConfig base(const std::string& potential, double a, double b, Boundary bc, double width) {
  ExperimentConfig c;
  c.potential = potential;
  c.x_min = a;
  c.x_max = b;
  c.boundary = bc;
  c.psi1.width = c.psi2.width = width;
  c.h_values = sweep_h;
  c.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return c;
}

// remainder criterion shared by the constant and variable coefficient runs
bool weyl_ok(const SweepReport& r, std::string& detail) {
  double slope = slope_or_nan(r.fits.relative_remainder);
  double last = r.rows.back().rel_err;
  detail += "rel-remainder slope " + fmt("%.3f", slope) + " in [0.6, 1.4], rel dev at h=0.05 " +
            fmt("%.4f", last) + " <= 0.10";
  return within(slope, 0.6, 1.4) && last <= 0.10;
}

double bump(double x) {
  double u = 1 - x * x;
  return u > 0 ? std::exp(-1 / u) : 0.0;
}

// Criteria 1, 2, 5, 7: constant potential, one sweep.
void constant_potential() {
  ExperimentConfig c = base("1", -10.0, 10.0, Boundary::periodic, 2.0);
  c.tasks = {Task::magnitude, Task::weyl_remainder, Task::smooth_leading, Task::truncation};
  auto t0 = Clock::now();
  SweepReport r = run_experiment(c);
  double elapsed = seconds_since(t0);
  print_rows(r);

  double lo = 1e300, hi = 0.0;
  for (const auto& row : r.rows) {
    double scaled = std::pow(row.h, 1.5) * row.I_exact;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  double slope = slope_or_nan(r.fits.magnitude);
  verdict(1, within(slope, -1.6, -1.4) && hi / lo <= 1.5 && elapsed <= 180.0,
          "magnitude slope " + fmt("%.3f", slope) + " in [-1.6, -1.4], h^1.5 I max/min " +
              fmt("%.3f", hi / lo) + " <= 1.5, runtime " + fmt("%.0f", elapsed) + " s <= 180 s");

  std::string detail;
  verdict(2, weyl_ok(r, detail), detail);

  double dev = r.smooth_leading ? r.smooth_leading->relative_deviation : 1.0;
  verdict(5, dev <= 0.02, "|h I_smooth - k0| / k0 = " + fmt("%.5f", dev) + " <= 0.02 at h=0.05");

  double g = slope_or_nan(r.fits.truncation_gamma);
  if (r.truncation)
    for (std::size_t i = 0; i < r.truncation->values.size(); ++i)
      std::printf("    gamma=%g |I - I_gamma|=%.6e\n", r.truncation->parameters[i], r.truncation->values[i]);
  verdict(7, within(g, -(1.0 + c.kappa) - 0.3, -c.kappa + 0.3),
          "gamma slope " + fmt("%.3f", g) + " in [-1.8, -0.2]");
}

// Criterion 3: V = 1 - x^2, cutoffs inside |x| <= 0.5.
void variable_coefficient() {
  auto t0 = Clock::now();
  bool all = true;
  std::string detail;
  for (double kappa : {0.25, 0.5, 0.75}) {
    ExperimentConfig c = base("1 - x^2", -4.0, 4.0, Boundary::dirichlet, 0.5);
    c.kappa = kappa;
    SweepReport r = run_experiment(c);
    std::printf("    kappa=%g\n", kappa);
    print_rows(r);
    detail += "kappa " + fmt("%g", kappa) + ": ";
    all = weyl_ok(r, detail) && all;
    detail += "; ";
  }
  double elapsed = seconds_since(t0);
  verdict(3, all && elapsed <= 600.0, detail + "runtime " + fmt("%.0f", elapsed) + " s <= 600 s");
}

// Criterion 4: potentials with a zero crossing on the cutoff support.
void degenerate() {
  struct Case {
    const char* v;
    double a, b;
  };
  bool all = true;
  std::string detail;
  for (Case k : {Case{"x^2 - 0.25", -2.5, 2.5}, Case{"x^4 - 0.1", -2.0, 2.0}}) {
    ExperimentConfig c = base(k.v, k.a, k.b, Boundary::dirichlet, 1.5);
    c.tasks = {Task::magnitude, Task::weyl_remainder, Task::conditions};
    SweepReport r = run_experiment(c);
    std::printf("    V=%s (gradient margin %.3f, hessian margin %.3f)\n", k.v,
                r.conditions->gradient.margin, r.conditions->hessian.margin);
    print_rows(r);
    double slope = slope_or_nan(r.fits.relative_remainder);
    all = within(slope, 0.4, 1.6) && all;
    detail += std::string(k.v) + ": rel-remainder slope " + fmt("%.3f", slope) + " in [0.4, 1.6]; ";
  }
  verdict(4, all, detail);
}

// Criterion 6: time-mollified projector.
void tauberian() {
  ExperimentConfig c = base("1 - x^2", -4.0, 4.0, Boundary::dirichlet, 0.5);
  SemiclassicalProblem p = make_problem(c, 0.05);
  std::vector<double> Ts{0.1, 0.2, 0.4, 0.8};
  TauberianSweep s = tauberian_energy_error(p, SingularWeight::pure_power(c.kappa),
                                            Mollifier::canonical(), Ts);
  for (std::size_t i = 0; i < Ts.size(); ++i)
    std::printf("    T=%g |I - I_T|=%.6e\n", s.T_values[i], s.errors[i]);
  double slope = s.fit ? s.fit->slope : std::numeric_limits<double>::quiet_NaN();
  verdict(6, within(slope, -1.4, -0.6), "T slope " + fmt("%.3f", slope) + " in [-1.4, -0.6]");
}

// Criterion 8: closed-form kernel and an independent quadrature of I.
void oracles() {
  const double h = 0.05;
  ExperimentConfig c = base("1", -10.0, 10.0, Boundary::periodic, 2.0);
  SemiclassicalProblem p = make_problem(c, h);
  EigenSystem e = solve(p, EnergyWindow::up_to(0.0));
  ProjectorKernel k = projector_kernel(e, 0.0);
  const Grid& g = p.grid;
  FrozenSymbol frozen{1, 1.0, h};
  const double peak = 1.0 / (std::numbers::pi * h);
  double worst = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    if (std::abs(g.x(i)) > 5.0) continue;
    for (int j = 0; j < g.size(); ++j) {
      if (std::abs(g.x(j)) > 5.0 || std::abs(g.x(i) - g.x(j)) > 2.0) continue;
      double ref = weyl_kernel_1d(frozen, g.x(i) - g.x(j));
      worst = std::max(worst, std::abs(k.values(i, j) - ref) / peak);
    }
  }

  Grid rg(-2.0, 2.0, 801, Boundary::dirichlet);
  ProjectorKernel rank{Eigen::MatrixXd(rg.size(), rg.size()), rg, 0.0, std::numeric_limits<double>::quiet_NaN()};
  for (int i = 0; i < rg.size(); ++i)
    for (int j = 0; j < rg.size(); ++j) rank.values(i, j) = bump(rg.x(i)) * bump(rg.x(j));
  CutoffFunction psi(0.0, 1.5);
  double ours = compute_I({rank, SingularWeight::pure_power(0.5), psi, psi});
  double ref = oracle::singular_2d(
      [&](double x, double y) { return std::pow(bump(x) * bump(y), 2) * psi(x) * psi(y); }, 0.5, -1.0, 1.0);
  double rel = std::abs(ours - ref) / ref;
  verdict(8, worst <= 0.02 && rel <= 0.005,
          "kernel envelope deviation " + fmt("%.5f", worst) + " <= 0.02, rank-one I deviation " +
              fmt("%.2e", rel) + " <= 0.005");
}

// Criterion 9: invariant suite.
void invariants() {
  auto t0 = Clock::now();
  std::vector<std::string> broken;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) broken.push_back(what);
  };

  {
    SemiclassicalProblem p;
    p.potential = Potential::from_source("1 - x^2");
    p.h = 0.1;
    p.grid = resolve_grid(p.potential, p.h, -3.0, 3.0, Boundary::dirichlet, 8);
    EigenSystem e = solve(p);
    KernelDiagnostics d = diagnose(projector_kernel(e, 0.0));
    expect(d.symmetric, "projector symmetry");
    expect(d.idempotence_defect <= 1e-6, "projector idempotence");
    expect(d.min_diagonal >= 0.0, "projector diagonal positivity");
    expect(std::abs(d.trace - e.count_at_or_below(0.0)) <= 1e-8, "projector trace");
  }

  {
    const Mollifier& m = Mollifier::canonical();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      double lambda = u(rng);
      ok = ok && std::abs(tauberian_weight(m, lambda, 0.05, 0.4) + tauberian_weight(m, -lambda, 0.05, 0.4) - 1) <= 1e-14;
    }
    expect(ok, "tauberian weight symmetry");
  }

  {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    bool ok = true;
    for (double kappa : {0.25, 0.5, 0.75}) {
      FourierWeight f = fourier_hat(SingularWeight::pure_power(kappa), 0.0);
      for (int i = 0; i < 100; ++i) {
        double z = u(rng), s = u(rng);
        ok = ok && std::abs(f(s * z) / f(z) - std::pow(s, kappa - 1)) <= 1e-12 * std::pow(s, kappa - 1);
      }
    }
    expect(ok, "transform homogeneity");
    const double pi = std::numbers::pi;
    double closed = std::sqrt(2 * pi) / (2 * pi * pi);
    double c = fourier_hat(SingularWeight::pure_power(0.5), 0.0).coefficient;
    double quad = 4.0 / (4 * pi * pi) * oracle::cosine_power_integral(0.5);
    expect(std::abs(c - closed) <= 1e-4 * closed && std::abs(c - quad) <= 1e-4 * closed,
           "kappa = 1/2 transform constant");
  }

  {
    bool ok = true;
    for (const auto& entry : potential_catalog()) {
      SemiclassicalProblem p;
      p.potential = Potential::from_source(entry.expression);
      p.grid = Grid(-2.0, 2.0, 401, Boundary::periodic);
      for (double eps : {0.01, 0.1, 0.5}) {
        ConditionReport r = check_conditions(p, eps);
        ok = ok && (!r.v_positive.holds || r.microhyperbolic_xi.holds);
        ok = ok && (!r.gradient.holds || r.hessian.holds);
        for (int n = 0; n < 3; ++n)
          ok = ok && (!r.xi_derivatives.at(n).holds || r.xi_derivatives.at(n + 1).holds);
      }
    }
    expect(ok, "condition implication lattice");
  }

  {
    bool ok = true;
    for (const char* src : {"1 - x^2", "-x^-2", "0.5 - (x^2 - 1)^2", "exp(-x^2) * cos(3*x)", "2 - (3 - x)",
                            "abs(x)^0.5", "tanh(x/2)/(1 + x^2)"}) {
      Expression e = parse_expression(src);
      ok = ok && parse_expression(e.to_string()) == e;
      Expression d = parse_potential(src).second;
      ok = ok && parse_expression(d.to_string()) == d;
    }
    expect(ok, "parser round trip");
    auto offset_of = [](const char* src) -> long {
      try {
        parse_expression(src);
      } catch (const ParseError& e) {
        return static_cast<long>(e.offset());
      }
      return -1;
    };
    expect(offset_of("1 +* 2") == 3 && offset_of("1 + foo(x)") == 4 && offset_of("(x") >= 0 &&
               offset_of("") >= 0,
           "parser error cases");
  }

  {
    ExperimentConfig c = base("1 - x^2", -3.0, 3.0, Boundary::dirichlet, 0.8);
    c.h_values = {0.4, 0.28, 0.2, 0.14};
    c.tasks = {Task::magnitude, Task::weyl_remainder, Task::tauberian, Task::truncation, Task::conditions};
    c.tauberian_T_values = {0.3, 0.6, 1.2, 2.4};
    c.workers = 1;
    auto a = report_json(run_experiment(c));
    c.workers = 2;
    auto b = report_json(run_experiment(c));
    a["config"].erase("workers");
    b["config"].erase("workers");
    expect(a.dump() == b.dump(), "report determinism");
  }

  double elapsed = seconds_since(t0);
  std::string detail = broken.empty() ? "all invariants hold" : "broken:";
  for (const auto& b : broken) detail += " [" + b + "]";
  verdict(9, broken.empty() && elapsed <= 120.0, detail + ", runtime " + fmt("%.1f", elapsed) + " s <= 120 s");
}

void guarded(std::initializer_list<int> criteria, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    std::printf("    %s\n", e.what());
    for (int c : criteria) verdict(c, false, std::string("threw: ") + e.what());
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  guarded({9}, invariants);
  guarded({8}, oracles);
  guarded({6}, tauberian);
  guarded({1, 2, 5, 7}, constant_potential);
  guarded({3}, variable_coefficient);
  guarded({4}, degenerate);
  int failures = 0;
  for (int c = 1; c <= 9; ++c) {
    const Verdict& v = verdicts[c];
    bool pass = v.recorded && v.pass;
    std::printf("criterion %d: %s  %s\n", c, pass ? "PASS" : "FAIL",
                v.recorded ? v.detail.c_str() : "not evaluated");
    failures += !pass;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
