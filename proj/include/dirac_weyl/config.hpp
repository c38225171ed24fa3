#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dirac_weyl/conditions.hpp"
#include "dirac_weyl/dirac_energy.hpp"
#include "dirac_weyl/grid.hpp"

namespace dw {

enum class Task { magnitude, weyl_remainder, smooth_leading, tauberian, truncation, conditions };

std::string to_string(Task t);
Task parse_task(std::string_view name);

struct CutoffSpec {
  double center = 0.0;
  double width = 2.0;
};

/// Everything needed to reproduce a sweep. Text form is one `key = value` per
/// line, dotted keys, `#` comments; lists are comma separated.
struct ExperimentConfig {
  std::string potential = "1";  // expression or catalog name
  double x_min = -10.0;
  double x_max = 10.0;
  Boundary boundary = Boundary::periodic;
  double kappa = 0.5;
  std::vector<double> h_values;
  int grid_rule = 8;  // points per semiclassical wavelength
  CutoffSpec psi1;
  CutoffSpec psi2;
  std::vector<Task> tasks{Task::magnitude, Task::weyl_remainder};
  double epsilon = 0.1;
  std::string output_dir = "dirac-weyl-out";
  std::uint64_t seed = 1;
  double tau = 0.0;
  DiagonalRule diagonal_rule = DiagonalRule::analytic_cell;
  ConditionRegion condition_region = ConditionRegion::cutoff_support;

  std::vector<double> tauberian_T_values{0.1, 0.2, 0.4, 0.8};
  double tauberian_h = 0.0;   // 0: smallest h of the sweep
  double tauberian_row_T = 0.4;
  std::vector<double> truncation_gamma_values{0.25, 0.5, 1.0, 2.0};
  double truncation_h = 0.0;  // 0: smallest h of the sweep

  int workers = 1;

  bool has_task(Task t) const;
  /// Potential expression after catalog lookup.
  std::string potential_expression() const;

  /// Throws ConfigError on any violated invariant.
  void validate() const;

  /// Resolved key/value pairs in canonical order, including defaults.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Parses the text form; unknown keys, duplicates and malformed values throw
/// ConfigError naming the line. The result is validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& config);

std::string to_string(Boundary b);
std::string to_string(DiagonalRule r);
std::string to_string(ConditionRegion r);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace dw
