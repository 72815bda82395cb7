#pragma once

#include "fracinv/experiments/presets.hpp"
#include "fracinv/inverse/gauss_newton.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracinv::experiments {

/// One reconstruction experiment: a system, what is observed, which noise
/// levels and initial guesses to try.
struct CaseSpec {
    char label = 'A';
    Eigen::VectorXd truth;
    Eigen::MatrixXd coupling;
    std::vector<std::size_t> observed;         // 0-based component indices
    std::vector<double> noise_levels{0.0};
    std::vector<Eigen::VectorXd> initial_guesses;
    std::size_t trials = 1;                    // noise realizations per delta > 0
    std::uint64_t seed_base = 20240101;
    double x0 = 0.5;
    GridSpec inversion_grid;
    std::optional<GridSpec> data_grid;         // defaults to inversion_grid
    inverse::GaussNewtonSettings settings;
    std::size_t threads = 1;

    [[nodiscard]] std::size_t components() const noexcept {
        return static_cast<std::size_t>(truth.size());
    }
    /// Throws ConfigError when the spec is inconsistent.
    void validate() const;
};

/// Preset cases: A {1}, B {2}, C {1,2} on the K = 2 preset; D {3}, E {2,3},
/// F {1,2,3} on the K = 3 preset. Initial guesses and noise levels are left empty.
[[nodiscard]] CaseSpec paper_case(char label, const GridSpec& grid = {});

/// Observed component set for a case label (0-based).
[[nodiscard]] std::vector<std::size_t> paper_observed(char label);

struct RunRow {
    char label = 'A';
    double noise_level = 0.0;
    std::size_t trial = 0;
    std::optional<std::uint64_t> seed;
    Eigen::VectorXd initial;
    inverse::ReconstructionResult result;
};

struct SweepSummary {
    std::size_t converged = 0;
    std::size_t diverged = 0;
    std::size_t min_iterations = 0;  // over converged runs; 0 if none
    std::size_t max_iterations = 0;
};

struct ExperimentReport {
    std::vector<RunRow> rows;
    std::optional<SweepSummary> sweep;
};

/// Noise seed for one (case, delta index, trial); a splitmix64 mix of the
/// base seed so that realizations are independent of execution order.
[[nodiscard]] std::uint64_t noise_seed(std::uint64_t base, char label, std::size_t delta_index,
                                       std::size_t trial) noexcept;

/// Clean data from the true orders on the data grid, restricted to the
/// inversion time grid (data grid N must be a multiple of inversion N).
[[nodiscard]] core::ObservationSeries generate_clean_data(const CaseSpec& spec);

/// Runs reconstruct for every (delta, trial, initial guess). Rows are ordered by
/// delta, then trial, then guess. Failures are recorded per row.
[[nodiscard]] ExperimentReport run_case(const CaseSpec& spec);

/// (i/10, j/10[, k/10]) with 9 >= i >= j [>= k] >= 1: 45 points for K = 2, 165 for K = 3.
[[nodiscard]] std::vector<Eigen::VectorXd> initial_guess_grid(std::size_t components);

struct SweepSpec {
    CaseSpec base;           // initial_guesses are replaced by the grid
    double noise_level = 0.0;
};

/// Runs the whole initial-guess grid and aggregates convergence counts.
[[nodiscard]] ExperimentReport run_sweep(const SweepSpec& spec);

[[nodiscard]] SweepSummary summarize(const std::vector<RunRow>& rows);

} // namespace fracinv::experiments
