#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dirac_weyl/config.hpp"
#include "dirac_weyl/errors.hpp"
#include "dirac_weyl/experiment.hpp"
#include "dirac_weyl/fit.hpp"
#include "dirac_weyl/report.hpp"

using namespace dw;
namespace fs = std::filesystem;

namespace {

const char* small_config =
    "potential = 1\n"
    "domain.x_min = -3\n"
    "domain.x_max = 3\n"
    "h_values = 0.4, 0.28, 0.2, 0.14\n"
    "psi1.width = 1\n"
    "psi2.width = 1\n"
    "tasks = magnitude, weyl_remainder, conditions\n";

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("dirac_weyl_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("exponent fits") {
  std::vector<double> h{0.2, 0.1, 0.05, 0.025};
  std::vector<double> v;
  for (double x : h) v.push_back(3 * x * x);
  ExponentFit f = fit_exponent(h, v);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.stderr_slope < 1e-10);
  CHECK(f.n_points == 4);

  std::vector<double> flat(4, 7.0);
  CHECK(fit_exponent(h, flat).slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<double> hs, noisy;
  for (int i = 0; i < 8; ++i) {
    double x = 0.2 * std::pow(0.8, i);
    hs.push_back(x);
    noisy.push_back(std::pow(x, -1.5) * std::exp(noise(rng)));
  }
  ExponentFit n = fit_exponent(hs, noisy);
  CHECK(std::abs(n.slope + 1.5) < 0.1);
  CHECK(n.stderr_slope > 0.0);

  v[2] = 0.0;
  try {
    fit_exponent(h, v);
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("h = 0.05") != std::string::npos);
  }
  std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS(fit_exponent(std::span<const double>(three), std::span<const double>(three)), ConfigError);
}

TEST_CASE("config parsing") {
  ExperimentConfig c = parse_config(std::string(small_config) + "# comment\n\nkappa = 0.25  # trailing\n");
  CHECK(c.kappa == 0.25);
  CHECK(c.h_values.size() == 4);
  CHECK(c.boundary == Boundary::periodic);
  CHECK(c.has_task(Task::conditions));
  CHECK_FALSE(c.has_task(Task::tauberian));
  CHECK(c.grid_rule == 8);

  ExperimentConfig again = parse_config(format_config(c));
  CHECK(format_config(again) == format_config(c));

  CHECK(config_error("potential = 1\nbogus = 3\n").find("line 2") != std::string::npos);
  CHECK(config_error("potential = 1\npotential = 2\n").find("duplicate") != std::string::npos);
  CHECK(config_error("kappa = abc\nh_values = 0.1").find("expected a number") != std::string::npos);
  CHECK(config_error("kappa = 1.5\nh_values = 0.1").find("kappa") != std::string::npos);
  CHECK(config_error("grid_rule = 4\nh_values = 0.1").find("grid_rule") != std::string::npos);
  CHECK(config_error("h_values = 0.1, 0.2").find("descending") != std::string::npos);
  CHECK(config_error("h_values = 0.4, 0.2, 0.19").find("geometric") != std::string::npos);
  CHECK(config_error("potential = x +\nh_values = 0.1") != "");
  CHECK(config_error("tasks = magnitude\n").find("h_values") != std::string::npos);
  CHECK(config_error("tasks = nonsense\nh_values = 0.1").find("nonsense") != std::string::npos);
  CHECK(config_error("no equals sign here").find("line 1") != std::string::npos);
  CHECK(config_error("tasks = conditions\n") == "");
  CHECK(parse_config("potential = well\nh_values = 0.1").potential_expression() == "1 - x^2");
}

TEST_CASE("node cap names h") {
  ExperimentConfig c = parse_config("h_values = 0.0001");
  try {
    make_problem(c, 0.0001);
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("h = " + format_double(0.0001)) != std::string::npos);
  }
}

TEST_CASE("conditions-only run and empty report") {
  ExperimentConfig c = parse_config("tasks = conditions\npsi1.width = 1\npsi2.width = 1\n");
  SweepReport r = run_experiment(c);
  CHECK(r.rows.empty());
  REQUIRE(r.conditions);
  CHECK(r.conditions->v_positive.holds);
  CHECK(sweep_csv(r) == "h,I_exact,I_weyl_leading,I_tauberian,abs_err,rel_err,runtime_seconds\r\n");
  auto j = report_json(r);
  CHECK(j["rows"].empty());
  CHECK(j["fits"]["magnitude_exponent"].is_null());
}

TEST_CASE("sweep report") {
  ExperimentConfig c = parse_config(small_config);
  c.workers = 3;
  SweepReport r = run_experiment(c);
  REQUIRE(r.rows.size() == 4);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].h < r.rows[i - 1].h);
  for (const auto& row : r.rows) {
    CHECK(row.I_exact > 0.0);
    CHECK(row.abs_err == doctest::Approx(std::abs(row.I_exact - row.I_weyl_leading)));
    CHECK_FALSE(row.I_tauberian);
  }
  REQUIRE(r.fits.magnitude);
  CHECK(r.fits.magnitude->n_points == 4);
  CHECK(r.fits.magnitude->slope < 0.0);

  fs::path dir = scratch("sweep");
  write_report(r, dir);
  std::string csv = slurp(dir / "sweep.csv");
  int lines = 0;
  for (std::size_t p = 0; (p = csv.find("\r\n", p)) != std::string::npos; p += 2) ++lines;
  CHECK(lines == 5);

  auto column = read_csv_column(dir / "sweep.csv", "I_exact");
  REQUIRE(column.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(column[i].first == r.rows[i].h);
    CHECK(column[i].second == r.rows[i].I_exact);
  }
  CHECK_THROWS_AS(read_csv_column(dir / "sweep.csv", "missing"), ConfigError);

  // JSON survives a parse/dump round trip bit for bit
  std::string text = slurp(dir / "report.json");
  auto parsed = nlohmann::ordered_json::parse(text);
  CHECK(parsed.dump(2) + "\n" == text);
  CHECK(parsed["rows"][0]["I_exact"].get<double>() == r.rows[0].I_exact);
  CHECK(parsed["config"]["workers"] == 3);

  // determinism, independent of the worker count
  c.workers = 1;
  SweepReport again = run_experiment(c);
  CHECK(report_json(again).dump() != "");
  auto a = report_json(r), b = report_json(again);
  a["config"].erase("workers");
  b["config"].erase("workers");
  CHECK(a.dump() == b.dump());
}

#ifdef DIRAC_WEYL_CLI
TEST_CASE("command line") {
  fs::path dir = scratch("cli");
  {
    std::ofstream(dir / "exp.conf") << small_config;
    std::ofstream(dir / "bad.conf") << "kappa = 2\nh_values = 0.1\n";
  }
  const std::string cli = DIRAC_WEYL_CLI;
  auto run = [&](const std::string& args) {
    std::string cmd = "\"" + cli + "\" " + args + " > \"" + (dir / "log.txt").string() + "\" 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  const std::string out = (dir / "out").string();
  CHECK(run("run --config " + (dir / "exp.conf").string() + " --output " + out + " --workers 2") == 0);
  CHECK(fs::exists(dir / "out" / "sweep.csv"));
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK(run("fit --csv " + out + "/sweep.csv --column I_exact") == 0);
  CHECK(slurp(dir / "log.txt").find("slope") != std::string::npos);
  CHECK(run("check-conditions --config " + (dir / "exp.conf").string()) == 0);
  CHECK(run("catalog") == 0);
  CHECK(run("run --config " + (dir / "bad.conf").string()) == 2);
  CHECK(slurp(dir / "log.txt").find("kappa") != std::string::npos);
  CHECK(run("run --config " + (dir / "missing.conf").string()) == 2);
  CHECK(run("run") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("fit --csv " + out + "/sweep.csv --column nope") == 2);
}
#endif
