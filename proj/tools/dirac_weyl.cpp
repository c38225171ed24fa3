#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dirac_weyl/config.hpp"
#include "dirac_weyl/errors.hpp"
#include "dirac_weyl/experiment.hpp"
#include "dirac_weyl/fit.hpp"
#include "dirac_weyl/potential.hpp"
#include "dirac_weyl/report.hpp"

namespace {

struct Overrides {
  std::string output;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
};

dw::ExperimentConfig load(const std::string& path, const Overrides& o) {
  dw::ExperimentConfig c = dw::load_config(path);
  if (!o.output.empty()) c.output_dir = o.output;
  if (o.workers) {
    c.workers = *o.workers;
  } else if (const char* env = std::getenv("DIRAC_WEYL_WORKERS")) {
    try {
      c.workers = std::stoi(env);
    } catch (const std::exception&) {
      throw dw::ConfigError(std::string("DIRAC_WEYL_WORKERS is not an integer: ") + env);
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.epsilon) c.epsilon = *o.epsilon;
  c.validate();
  return c;
}

void print_fit(const char* name, const std::optional<dw::ExponentFit>& f) {
  if (!f) return;
  std::cout << "  " << name << ": " << f->slope << " +- " << f->stderr_slope << " (n=" << f->n_points
            << ")\n";
}

void print_flag(const char* name, const dw::ConditionFlag& f) {
  std::cout << "  " << name << ": " << (f.holds ? "yes" : "no") << "  margin " << f.margin << "\n";
}

void print_conditions(const dw::ConditionReport& c) {
  std::cout << "conditions (epsilon " << c.epsilon_used << ", region " << c.region << ")\n";
  print_flag("microhyperbolic in xi", c.microhyperbolic_xi);
  print_flag("V >= epsilon", c.v_positive);
  print_flag("|V| + |V'| >= epsilon", c.gradient);
  print_flag("|V| + |V'| + |V''| >= epsilon", c.hessian);
  for (const auto& [n, f] : c.xi_derivatives) {
    std::string label = "xi-derivatives up to order " + std::to_string(n);
    print_flag(label.c_str(), f);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac energy of semiclassical spectral projectors versus Weyl predictions"};
  app.require_subcommand(1);

  Overrides o;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--output", o.output, "output directory (overrides output_dir)");
    sub->add_option("--workers", o.workers, "concurrent h values (default: DIRAC_WEYL_WORKERS or 1)");
    sub->add_option("--seed", o.seed, "seed for randomised checks");
    sub->add_option("--epsilon", o.epsilon, "threshold for the condition flags");
  };

  auto* run = app.add_subcommand("run", "run the configured sweep and write sweep.csv/report.json");
  add_common(run);
  auto* check = app.add_subcommand("check-conditions", "evaluate the non-degeneracy conditions");
  add_common(check);

  auto* fit = app.add_subcommand("fit", "log-log slope of a column of sweep.csv against h");
  std::string csv_path, column;
  fit->add_option("--csv", csv_path, "sweep.csv file")->required();
  fit->add_option("--column", column, "column name")->required();

  auto* catalog = app.add_subcommand("catalog", "list builtin potentials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      dw::ExperimentConfig c = load(config_path, o);
      dw::SweepReport r = dw::run_experiment(c);
      dw::write_report(r, c.output_dir);
      std::cout << "wrote " << c.output_dir << "/sweep.csv and report.json (" << r.rows.size()
                << " rows)\n";
      std::cout.precision(6);
      for (const auto& row : r.rows)
        std::cout << "  h=" << row.h << "  I=" << row.I_exact << "  leading=" << row.I_weyl_leading
                  << "  rel_err=" << row.rel_err << "\n";
      print_fit("magnitude exponent", r.fits.magnitude);
      print_fit("remainder exponent", r.fits.remainder);
      print_fit("relative remainder exponent", r.fits.relative_remainder);
      print_fit("tauberian T exponent", r.fits.tauberian_T);
      print_fit("truncation gamma exponent", r.fits.truncation_gamma);
      if (r.conditions) print_conditions(*r.conditions);
    } else if (*check) {
      dw::ExperimentConfig c = load(config_path, o);
      c.tasks = {dw::Task::conditions};
      dw::SweepReport r = dw::run_experiment(c);
      print_conditions(*r.conditions);
      if (!o.output.empty()) dw::write_report(r, c.output_dir);
    } else if (*fit) {
      auto pairs = dw::read_csv_column(csv_path, column);
      dw::ExponentFit f = dw::fit_exponent(pairs);
      std::cout << column << ": slope " << f.slope << " +- " << f.stderr_slope << ", intercept "
                << f.intercept << ", n=" << f.n_points << "\n";
    } else if (*catalog) {
      for (const auto& e : dw::potential_catalog())
        std::cout << e.name << "\t" << e.expression << "\t" << e.note << "\n";
    }
  } catch (const dw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dw::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
