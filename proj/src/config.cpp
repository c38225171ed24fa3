#include "dirac_weyl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dirac_weyl/errors.hpp"
#include "dirac_weyl/expression.hpp"
#include "dirac_weyl/potential.hpp"

namespace dw {

namespace {

const std::pair<Task, const char*> task_names[] = {
    {Task::magnitude, "magnitude"},   {Task::weyl_remainder, "weyl_remainder"},
    {Task::smooth_leading, "smooth_leading"}, {Task::tauberian, "tauberian"},
    {Task::truncation, "truncation"}, {Task::conditions, "conditions"},
};

std::string_view trim(std::string_view s) {
  auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  auto b = std::find_if(s.begin(), s.end(), not_space);
  auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string_view(&*b, e - b) : std::string_view();
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct LineError {
  int line;
  std::string key;
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line) + " (" + key + "): " + what);
  }
};

double to_double(std::string_view v, const LineError& where) {
  double out = 0.0;
  auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out))
    where.fail("expected a number, got '" + std::string(v) + "'");
  return out;
}

template <class Int>
Int to_integer(std::string_view v, const LineError& where) {
  Int out = 0;
  auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size())
    where.fail("expected an integer, got '" + std::string(v) + "'");
  return out;
}

std::vector<double> to_list(std::string_view v, const LineError& where) {
  std::vector<double> out;
  for (auto item : split_list(v)) out.push_back(to_double(item, where));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

Boundary parse_boundary(std::string_view v, const LineError& where) {
  if (v == "periodic") return Boundary::periodic;
  if (v == "dirichlet") return Boundary::dirichlet;
  where.fail("boundary must be 'periodic' or 'dirichlet'");
}

DiagonalRule parse_rule(std::string_view v, const LineError& where) {
  if (v == "analytic_cell") return DiagonalRule::analytic_cell;
  if (v == "excise") return DiagonalRule::excise;
  where.fail("diagonal_rule must be 'analytic_cell' or 'excise'");
}

ConditionRegion parse_region(std::string_view v, const LineError& where) {
  if (v == "cutoff_support") return ConditionRegion::cutoff_support;
  if (v == "grid") return ConditionRegion::grid;
  where.fail("conditions.region must be 'cutoff_support' or 'grid'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("config: " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string to_string(Task t) {
  for (auto [task, name] : task_names)
    if (task == t) return name;
  return "?";
}

Task parse_task(std::string_view name) {
  for (auto [task, n] : task_names)
    if (name == n) return task;
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "dirichlet"; }
std::string to_string(DiagonalRule r) {
  return r == DiagonalRule::analytic_cell ? "analytic_cell" : "excise";
}
std::string to_string(ConditionRegion r) {
  return r == ConditionRegion::grid ? "grid" : "cutoff_support";
}

bool ExperimentConfig::has_task(Task t) const {
  return std::find(tasks.begin(), tasks.end(), t) != tasks.end();
}

std::string ExperimentConfig::potential_expression() const {
  for (const auto& entry : potential_catalog())
    if (entry.name == potential) return entry.expression;
  return potential;
}

void ExperimentConfig::validate() const {
  parse_potential(potential_expression());
  require(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max,
          "domain.x_min must be below domain.x_max");
  require(kappa > 0.0 && kappa < 1.0, "kappa must lie in (0, 1)");
  require(grid_rule >= 8 && grid_rule <= 64, "grid_rule must be between 8 and 64");
  require(psi1.width > 0.0 && psi2.width > 0.0, "cutoff widths must be positive");
  require(epsilon > 0.0, "epsilon must be positive");
  require(std::isfinite(tau), "tau must be finite");
  require(workers >= 1, "workers must be at least 1");
  require(!tasks.empty(), "tasks must not be empty");
  std::set<Task> seen(tasks.begin(), tasks.end());
  require(seen.size() == tasks.size(), "tasks contains duplicates");

  bool needs_rows = std::any_of(tasks.begin(), tasks.end(), [](Task t) { return t != Task::conditions; });
  require(!needs_rows || !h_values.empty(), "h_values must not be empty for the requested tasks");
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    require(h_values[i] > 0.0, "h_values must be positive");
    if (i) require(h_values[i] < h_values[i - 1], "h_values must be strictly descending");
  }
  if (h_values.size() >= 3) {
    double log_mean = std::log(h_values.back() / h_values.front()) / (h_values.size() - 1);
    double mean = std::exp(log_mean);
    for (std::size_t i = 1; i < h_values.size(); ++i) {
      double ratio = h_values[i] / h_values[i - 1];
      require(std::abs(ratio / mean - 1.0) <= 0.1,
              "h_values must be geometric (successive ratios within 10% of their mean)");
    }
  }
  for (double t : tauberian_T_values) require(t > 0.0, "tauberian.T_values must be positive");
  require(tauberian_row_T > 0.0, "tauberian.row_T must be positive");
  require(tauberian_h >= 0.0, "tauberian.h must be nonnegative (0 selects the smallest h)");
  for (double g : truncation_gamma_values) require(g > 0.0, "truncation.gamma_values must be positive");
  require(truncation_h >= 0.0, "truncation.h must be nonnegative (0 selects the smallest h)");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::string task_list;
  for (std::size_t i = 0; i < tasks.size(); ++i) task_list += (i ? ", " : "") + to_string(tasks[i]);
  return {
      {"potential", potential},
      {"domain.x_min", format_double(x_min)},
      {"domain.x_max", format_double(x_max)},
      {"domain.boundary", to_string(boundary)},
      {"kappa", format_double(kappa)},
      {"h_values", join(h_values)},
      {"grid_rule", std::to_string(grid_rule)},
      {"psi1.center", format_double(psi1.center)},
      {"psi1.width", format_double(psi1.width)},
      {"psi2.center", format_double(psi2.center)},
      {"psi2.width", format_double(psi2.width)},
      {"tasks", task_list},
      {"epsilon", format_double(epsilon)},
      {"output_dir", output_dir},
      {"seed", std::to_string(seed)},
      {"tau", format_double(tau)},
      {"diagonal_rule", to_string(diagonal_rule)},
      {"conditions.region", to_string(condition_region)},
      {"tauberian.T_values", join(tauberian_T_values)},
      {"tauberian.h", format_double(tauberian_h)},
      {"tauberian.row_T", format_double(tauberian_row_T)},
      {"truncation.gamma_values", join(truncation_gamma_values)},
      {"truncation.h", format_double(truncation_h)},
      {"workers", std::to_string(workers)},
  };
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == text.npos ? text.npos : nl - pos);
    pos = nl == text.npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    std::size_t hash = line.find('#');
    if (hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == line.npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    LineError where{line_no, key};
    if (!seen.insert(key).second) where.fail("duplicate key");

    if (key == "potential") {
      if (value.empty()) where.fail("empty potential");
      c.potential = std::string(value);
    } else if (key == "domain.x_min") c.x_min = to_double(value, where);
    else if (key == "domain.x_max") c.x_max = to_double(value, where);
    else if (key == "domain.boundary") c.boundary = parse_boundary(value, where);
    else if (key == "kappa") c.kappa = to_double(value, where);
    else if (key == "h_values") c.h_values = to_list(value, where);
    else if (key == "grid_rule") c.grid_rule = to_integer<int>(value, where);
    else if (key == "psi1.center") c.psi1.center = to_double(value, where);
    else if (key == "psi1.width") c.psi1.width = to_double(value, where);
    else if (key == "psi2.center") c.psi2.center = to_double(value, where);
    else if (key == "psi2.width") c.psi2.width = to_double(value, where);
    else if (key == "tasks") {
      c.tasks.clear();
      for (auto t : split_list(value)) {
        try {
          c.tasks.push_back(parse_task(t));
        } catch (const ConfigError& e) {
          where.fail(e.what());
        }
      }
    } else if (key == "epsilon") c.epsilon = to_double(value, where);
    else if (key == "output_dir") c.output_dir = std::string(value);
    else if (key == "seed") c.seed = to_integer<std::uint64_t>(value, where);
    else if (key == "tau") c.tau = to_double(value, where);
    else if (key == "diagonal_rule") c.diagonal_rule = parse_rule(value, where);
    else if (key == "conditions.region") c.condition_region = parse_region(value, where);
    else if (key == "tauberian.T_values") c.tauberian_T_values = to_list(value, where);
    else if (key == "tauberian.h") c.tauberian_h = to_double(value, where);
    else if (key == "tauberian.row_T") c.tauberian_row_T = to_double(value, where);
    else if (key == "truncation.gamma_values") c.truncation_gamma_values = to_list(value, where);
    else if (key == "truncation.h") c.truncation_h = to_double(value, where);
    else if (key == "workers") c.workers = to_integer<int>(value, where);
    else where.fail("unknown key");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [k, v] : config.entries()) out += k + " = " + v + "\n";
  return out;
}

}  // namespace dw
