#include "dirac_weyl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "dirac_weyl/dirac_energy.hpp"
#include "dirac_weyl/errors.hpp"
#include "dirac_weyl/tauberian.hpp"
#include "dirac_weyl/weyl_predictor.hpp"

namespace dw {

namespace {

std::optional<ExponentFit> try_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 4) return std::nullopt;
  if (std::any_of(y.begin(), y.end(), [](double v) { return !(v > 0.0); })) return std::nullopt;
  return fit_exponent(x, y);
}

struct Job {
  double h = 0.0;
  bool row = false;
  bool tauberian = false;
  bool truncation = false;
  bool smooth = false;
};

struct JobResult {
  std::optional<SweepRow> row;
  std::optional<ParameterSeries> tauberian;
  std::optional<ParameterSeries> truncation;
  std::optional<SmoothLeading> smooth;
};

JobResult run_job(const ExperimentConfig& config, const Job& job) {
  auto start = std::chrono::steady_clock::now();
  SemiclassicalProblem problem = make_problem(config, job.h);
  SingularWeight weight = SingularWeight::pure_power(config.kappa);
  const Mollifier& moll = Mollifier::canonical();

  double reach = 0.0;
  bool row_T_usable = config.has_task(Task::tauberian) && config.tauberian_row_T >= 2.0 * job.h;
  if (job.row && row_T_usable)
    reach = std::max(reach, mollifier_energy_reach(moll, job.h, config.tauberian_row_T));
  if (job.tauberian) {
    double t_min = *std::min_element(config.tauberian_T_values.begin(), config.tauberian_T_values.end());
    reach = std::max(reach, mollifier_energy_reach(moll, job.h, t_min));
  }
  EigenSystem eigs = solve(problem, EnergyWindow::up_to(problem.tau + reach));
  ProjectorKernel kernel = projector_kernel(eigs, problem.tau);
  EnergyQuadrature q{kernel, weight, problem.psi1, problem.psi2, config.diagonal_rule};
  double I = compute_I(q);

  JobResult out;
  if (job.row) {
    SweepRow row;
    row.h = job.h;
    row.I_exact = I;
    row.I_weyl_leading = *weyl_leading(problem, weight).predicted_I;
    row.abs_err = std::abs(I - row.I_weyl_leading);
    row.rel_err = I != 0.0 ? row.abs_err / std::abs(I) : std::numeric_limits<double>::infinity();
    row.n_points = problem.grid.n_points();
    row.retained_modes = eigs.count();
    if (row_T_usable) {
      MollifiedProjector mp = mollified_projector(eigs, moll, job.h, config.tauberian_row_T, problem.tau);
      row.I_tauberian = compute_I({mp.kernel, weight, problem.psi1, problem.psi2, config.diagonal_rule});
    }
    out.row = row;
  }
  if (job.tauberian) {
    TauberianSweep sweep = tauberian_energy_error(eigs, weight, problem.psi1, problem.psi2, moll,
                                                  job.h, config.tauberian_T_values, I, problem.tau);
    out.tauberian = ParameterSeries{job.h, sweep.T_values, sweep.errors};
  }
  if (job.truncation) {
    ParameterSeries s{job.h, {}, {}};
    for (double gamma : config.truncation_gamma_values) {
      s.parameters.push_back(gamma);
      s.values.push_back(std::abs(I - compute_I_truncated(q, gamma)));
    }
    out.truncation = s;
  }
  if (job.smooth) {
    auto one = [](double, double) { return 1.0; };
    SmoothLeading s;
    s.h = job.h;
    s.h_times_I = job.h * compute_I_smooth(kernel, one, problem.psi1, problem.psi2);
    s.coefficient = smooth_leading_coefficient(problem, one);
    s.relative_deviation = std::abs(s.h_times_I - s.coefficient) / std::abs(s.coefficient);
    out.smooth = s;
  }
  if (out.row)
    out.row->runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

SemiclassicalProblem make_problem(const ExperimentConfig& config, double h) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  Potential v = Potential::from_source(config.potential_expression());
  Grid grid = resolve_grid(v, h, config.x_min, config.x_max, config.boundary, config.grid_rule);
  if (grid.n_points() > max_grid_points)
    throw ConfigError("h = " + format_double(h) + " needs " + std::to_string(grid.n_points()) +
                      " grid points, above the cap of " + std::to_string(max_grid_points));
  SemiclassicalProblem p{v,
                         h,
                         grid,
                         CutoffFunction(config.psi1.center, config.psi1.width),
                         CutoffFunction(config.psi2.center, config.psi2.width),
                         config.tau,
                         config.grid_rule};
  p.validate();
  return p;
}

SweepReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  SweepReport report;
  report.config = config;

  if (config.has_task(Task::conditions)) {
    SemiclassicalProblem p{Potential::from_source(config.potential_expression()),
                           0.1,
                           Grid(config.x_min, config.x_max, 2001, config.boundary),
                           CutoffFunction(config.psi1.center, config.psi1.width),
                           CutoffFunction(config.psi2.center, config.psi2.width),
                           config.tau,
                           config.grid_rule};
    report.conditions = check_conditions(p, config.epsilon, config.condition_region);
  }

  bool rows = config.has_task(Task::magnitude) || config.has_task(Task::weyl_remainder) ||
              config.has_task(Task::tauberian);
  std::vector<Job> jobs;
  auto job_for = [&](double h) -> Job& {
    for (auto& j : jobs)
      if (j.h == h) return j;
    jobs.push_back({h});
    return jobs.back();
  };
  if (rows)
    for (double h : config.h_values) job_for(h).row = true;
  if (!config.h_values.empty()) {
    double smallest = config.h_values.back();
    if (config.has_task(Task::smooth_leading)) job_for(smallest).smooth = true;
    if (config.has_task(Task::tauberian) && !config.tauberian_T_values.empty())
      job_for(config.tauberian_h > 0 ? config.tauberian_h : smallest).tauberian = true;
    if (config.has_task(Task::truncation) && !config.truncation_gamma_values.empty())
      job_for(config.truncation_h > 0 ? config.truncation_h : smallest).truncation = true;
  }

  // Validate every grid before spending time on eigensolves.
  for (const Job& j : jobs) make_problem(config, j.h);

  std::vector<JobResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        results[i] = run_job(config, jobs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int threads = std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (results[i].row) report.rows.push_back(*results[i].row);
    if (results[i].tauberian) report.tauberian = results[i].tauberian;
    if (results[i].truncation) report.truncation = results[i].truncation;
    if (results[i].smooth) report.smooth_leading = results[i].smooth;
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.h > b.h; });

  std::vector<double> hs, values, abs_err, rel_err;
  for (const auto& r : report.rows) {
    hs.push_back(r.h);
    values.push_back(r.I_exact);
    abs_err.push_back(r.abs_err);
    rel_err.push_back(r.rel_err);
  }
  if (config.has_task(Task::magnitude)) report.fits.magnitude = try_fit(hs, values);
  if (config.has_task(Task::weyl_remainder)) {
    report.fits.remainder = try_fit(hs, abs_err);
    report.fits.relative_remainder = try_fit(hs, rel_err);
  }
  if (report.tauberian) report.fits.tauberian_T = try_fit(report.tauberian->parameters, report.tauberian->values);
  if (report.truncation)
    report.fits.truncation_gamma = try_fit(report.truncation->parameters, report.truncation->values);
  return report;
}

}  // namespace dw
