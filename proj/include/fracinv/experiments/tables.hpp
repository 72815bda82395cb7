#pragma once

#include "fracinv/experiments/cases.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fracinv::experiments {

struct ReproduceOptions {
    GridSpec grid;
    bool fine_data = false;                       // generate data on a 4x finer grid
    std::vector<double> noise_levels{0.0, 0.01, 0.05};
    std::size_t trials = 10;                      // noise realizations per delta > 0
    std::uint64_t seed = 20240101;
    std::size_t threads = 1;
    inverse::GaussNewtonSettings settings;
};

/// Output of `reproduce tableN`: all runs plus the table-shaped CSV.
struct TableOutput {
    std::string name;        // "table1" .. "table5"
    ExperimentReport report; // every run of every case
    std::string table_csv;
};

/// table1 / table2: Cases A-C from (0.5, 0.5); table3: from (0.7, 0.3);
/// table4: K = 2 sweeps A-C; table5: K = 3 sweeps D-F.
[[nodiscard]] TableOutput reproduce_table(const std::string& name, const ReproduceOptions& options);

/// Rows of one case label.
[[nodiscard]] std::vector<RunRow> rows_for(const ExperimentReport& report, char label);

/// Writes <name>.csv (table), <name>_runs.csv and <name>.json into dir.
std::vector<std::filesystem::path> write_table(const TableOutput& out, const std::filesystem::path& dir);

} // namespace fracinv::experiments
