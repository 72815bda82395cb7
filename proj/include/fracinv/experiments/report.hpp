#pragma once

#include "fracinv/experiments/cases.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace fracinv::experiments {

/// Fixed-point rendering with 6 decimals, the precision of the published tables.
[[nodiscard]] std::string fixed6(double v);

/// Statistics for one (case, delta, initial guess) group of runs. Diverged
/// runs count as +inf error, so medians stay conservative.
struct CellStats {
    char label = 'A';
    double noise_level = 0.0;
    Eigen::VectorXd initial;
    std::size_t runs = 0;
    std::size_t converged = 0;
    Eigen::VectorXd median_orders;      // over converged runs; NaN if none
    Eigen::VectorXd median_rel_err_pct; // +inf entries when the majority diverged
};

[[nodiscard]] std::vector<CellStats> cell_statistics(const ExperimentReport& report);

/// One row per run: case, delta, alpha0_k..., alpha_star_k..., rel_err_pct_k...,
/// status, iterations, seed. Diverged runs leave alpha_star and rel_err empty.
[[nodiscard]] std::string runs_csv(const ExperimentReport& report);

[[nodiscard]] nlohmann::json summary_json(const ExperimentReport& report);

/// Writes <name>.csv (runs) and <name>.json (aggregates) into dir. Throws
/// ConfigError for an empty report and IoError when the files cannot be written.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               const std::filesystem::path& dir,
                                               const std::string& name);

void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace fracinv::experiments
