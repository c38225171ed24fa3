#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "dirac_weyl/experiment.hpp"

namespace dw {

inline constexpr const char* report_version = "dirac-weyl-report/1";

std::string sweep_csv(const SweepReport& report);
nlohmann::ordered_json report_json(const SweepReport& report);

/// Writes sweep.csv and report.json into `dir` (created if missing).
/// Filesystem errors propagate unchanged.
void write_report(const SweepReport& report, const std::filesystem::path& dir);

/// Column `column` of a sweep CSV as (h, value) pairs; empty cells skipped.
std::vector<std::pair<double, double>> read_csv_column(const std::filesystem::path& csv,
                                                       const std::string& column);

}  // namespace dw
