#include "dirac_weyl/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dirac_weyl/errors.hpp"

namespace dw {

using nlohmann::ordered_json;

namespace {

const char* const csv_columns[] = {"h",       "I_exact", "I_weyl_leading", "I_tauberian",
                                   "abs_err", "rel_err", "runtime_seconds"};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json number_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json fit_json(const std::optional<ExponentFit>& f) {
  if (!f) return nullptr;
  ordered_json j;
  j["slope"] = f->slope;
  j["stderr"] = f->stderr_slope;
  j["intercept"] = f->intercept;
  j["n_points"] = f->n_points;
  return j;
}

ordered_json flag_json(const ConditionFlag& f) {
  ordered_json j;
  j["holds"] = f.holds;
  j["margin"] = number_or_null(f.margin);
  return j;
}

ordered_json series_json(const std::optional<ParameterSeries>& s, const char* param) {
  if (!s) return nullptr;
  ordered_json j;
  j["h"] = s->h;
  j[param] = s->parameters;
  j["errors"] = s->values;
  return j;
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["potential"] = c.potential;
  j["potential_expression"] = c.potential_expression();
  j["domain"] = {{"x_min", c.x_min}, {"x_max", c.x_max}, {"boundary", to_string(c.boundary)}};
  j["kappa"] = c.kappa;
  j["h_values"] = c.h_values;
  j["grid_rule"] = c.grid_rule;
  j["psi1"] = {{"center", c.psi1.center}, {"width", c.psi1.width}};
  j["psi2"] = {{"center", c.psi2.center}, {"width", c.psi2.width}};
  ordered_json tasks = ordered_json::array();
  for (Task t : c.tasks) tasks.push_back(to_string(t));
  j["tasks"] = tasks;
  j["epsilon"] = c.epsilon;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["tau"] = c.tau;
  j["diagonal_rule"] = to_string(c.diagonal_rule);
  j["conditions_region"] = to_string(c.condition_region);
  j["tauberian"] = {{"T_values", c.tauberian_T_values}, {"h", c.tauberian_h}, {"row_T", c.tauberian_row_T}};
  j["truncation"] = {{"gamma_values", c.truncation_gamma_values}, {"h", c.truncation_h}};
  j["workers"] = c.workers;
  return j;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

std::string sweep_csv(const SweepReport& report) {
  std::string out;
  for (std::size_t i = 0; i < std::size(csv_columns); ++i) {
    if (i) out += ',';
    out += csv_columns[i];
  }
  out += "\r\n";
  for (const SweepRow& r : report.rows) {
    out += g17(r.h) + ',' + g17(r.I_exact) + ',' + g17(r.I_weyl_leading) + ',' +
           (r.I_tauberian ? g17(*r.I_tauberian) : std::string()) + ',' + g17(r.abs_err) + ',' +
           g17(r.rel_err) + ',' + g17(r.runtime_seconds) + "\r\n";
  }
  return out;
}

ordered_json report_json(const SweepReport& report) {
  ordered_json j;
  j["version"] = report_version;
  j["config"] = config_json(report.config);
  ordered_json rows = ordered_json::array();
  for (const SweepRow& r : report.rows) {
    ordered_json row;
    row["h"] = r.h;
    row["I_exact"] = r.I_exact;
    row["I_weyl_leading"] = r.I_weyl_leading;
    row["I_tauberian"] = r.I_tauberian ? ordered_json(*r.I_tauberian) : ordered_json(nullptr);
    row["abs_err"] = r.abs_err;
    row["rel_err"] = number_or_null(r.rel_err);
    row["n_points"] = r.n_points;
    row["retained_modes"] = r.retained_modes;
    rows.push_back(row);
  }
  j["rows"] = rows;
  ordered_json fits;
  fits["magnitude_exponent"] = fit_json(report.fits.magnitude);
  fits["remainder_exponent"] = fit_json(report.fits.remainder);
  fits["relative_remainder_exponent"] = fit_json(report.fits.relative_remainder);
  fits["tauberian_T_exponent"] = fit_json(report.fits.tauberian_T);
  fits["truncation_gamma_exponent"] = fit_json(report.fits.truncation_gamma);
  j["fits"] = fits;
  if (report.conditions) {
    const ConditionReport& c = *report.conditions;
    ordered_json cj;
    cj["epsilon"] = c.epsilon_used;
    cj["region"] = c.region;
    cj["microhyperbolic_xi"] = flag_json(c.microhyperbolic_xi);
    cj["v_positive"] = flag_json(c.v_positive);
    cj["gradient"] = flag_json(c.gradient);
    cj["hessian"] = flag_json(c.hessian);
    ordered_json xi;
    for (const auto& [n, flag] : c.xi_derivatives) xi[std::to_string(n)] = flag_json(flag);
    cj["xi_derivatives"] = xi;
    j["conditions"] = cj;
  } else {
    j["conditions"] = nullptr;
  }
  j["tauberian"] = series_json(report.tauberian, "T_values");
  j["truncation"] = series_json(report.truncation, "gamma_values");
  if (report.smooth_leading) {
    const SmoothLeading& s = *report.smooth_leading;
    j["smooth_leading"] = {{"h", s.h},
                           {"h_times_I", s.h_times_I},
                           {"coefficient", s.coefficient},
                           {"relative_deviation", s.relative_deviation}};
  } else {
    j["smooth_leading"] = nullptr;
  }
  return j;
}

void write_report(const SweepReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                      std::make_error_code(std::errc::io_error));
    out << text;
    out.close();
    if (!out) throw std::filesystem::filesystem_error("write failed", path,
                                                      std::make_error_code(std::errc::io_error));
  };
  write(dir / "sweep.csv", sweep_csv(report));
  write(dir / "report.json", report_json(report).dump(2) + "\n");
}

std::vector<std::pair<double, double>> read_csv_column(const std::filesystem::path& csv,
                                                       const std::string& column) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + csv.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(csv.string() + " is empty");
  auto header = split_csv_line(line);
  auto find = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ConfigError("column '" + name + "' not found in " + csv.string());
  };
  std::size_t hcol = find("h"), vcol = find(column);
  std::vector<std::pair<double, double>> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ConfigError(csv.string() + " line " + std::to_string(line_no) + ": wrong cell count");
    if (cells[vcol].empty()) continue;
    try {
      out.emplace_back(std::stod(cells[hcol]), std::stod(cells[vcol]));
    } catch (const std::exception&) {
      throw ConfigError(csv.string() + " line " + std::to_string(line_no) + ": not a number");
    }
  }
  return out;
}

}  // namespace dw
