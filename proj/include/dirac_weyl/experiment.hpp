#pragma once

#include <optional>
#include <vector>

#include "dirac_weyl/conditions.hpp"
#include "dirac_weyl/config.hpp"
#include "dirac_weyl/fit.hpp"
#include "dirac_weyl/spectral.hpp"

namespace dw {

struct SweepRow {
  double h = 0.0;
  double I_exact = 0.0;
  double I_weyl_leading = 0.0;
  std::optional<double> I_tauberian;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double runtime_seconds = 0.0;
  int n_points = 0;
  int retained_modes = 0;
};

struct ParameterSeries {
  double h = 0.0;
  std::vector<double> parameters;
  std::vector<double> values;
};

struct SweepFits {
  std::optional<ExponentFit> magnitude;           // I vs h
  std::optional<ExponentFit> remainder;           // |I - leading| vs h
  std::optional<ExponentFit> relative_remainder;  // |I - leading| / I vs h
  std::optional<ExponentFit> tauberian_T;         // |I - I_T| vs T
  std::optional<ExponentFit> truncation_gamma;    // |I - I_gamma| vs gamma
};

struct SmoothLeading {
  double h = 0.0;
  double h_times_I = 0.0;
  double coefficient = 0.0;
  double relative_deviation = 0.0;
};

struct SweepReport {
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  SweepFits fits;
  std::optional<ConditionReport> conditions;
  std::optional<ParameterSeries> tauberian;
  std::optional<ParameterSeries> truncation;
  std::optional<SmoothLeading> smooth_leading;
};

/// Problem for one h: grid from the points-per-wavelength rule, cutoffs from
/// the config. Throws ConfigError naming h when the grid exceeds the node cap.
SemiclassicalProblem make_problem(const ExperimentConfig& config, double h);

constexpr int max_grid_points = 16384;

/// Runs the configured tasks. h values are processed concurrently on
/// config.workers threads; rows come back ordered by descending h.
SweepReport run_experiment(const ExperimentConfig& config);

}  // namespace dw
