#pragma once

#include "fracinv/core/observation.hpp"
#include "fracinv/experiments/cases.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <vector>

namespace fracinv::experiments {

/// Contents of an experiment file. Keys: K, alpha_true, C, N, M, L, T, x0,
/// observed_components (1-based), delta, alpha0, tol, fd_step, max_iters.
/// Only K is mandatory; C defaults to the K = 2 / K = 3 preset.
/// Initial values are always the preset profiles (2q, q, ...).
struct ExperimentConfig {
    std::size_t components = 2;
    std::optional<Eigen::VectorXd> truth;
    Eigen::MatrixXd coupling;
    GridSpec grid;
    double x0 = 0.5;
    std::vector<std::size_t> observed;        // 0-based
    std::vector<double> noise_levels{0.0};
    std::vector<Eigen::VectorXd> initial_guesses;
    inverse::GaussNewtonSettings settings;

    /// Throws ConfigError when alpha_true was not given.
    [[nodiscard]] const Eigen::VectorXd& true_orders() const;
    /// The forward system at alpha_true (or at the first initial guess when
    /// no truth is given, which is what `invert` needs).
    [[nodiscard]] core::SystemConfig system() const;
    /// A case with label 'X' for run_case / run_sweep.
    [[nodiscard]] CaseSpec case_spec() const;
};

[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json& j);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// CSV with header t,g_<k> (k 1-based), one row per observation time t_1..t_N.
[[nodiscard]] std::string data_csv(const core::ObservationSeries& series);
/// Reads such a CSV; times must match `time` node by node.
[[nodiscard]] core::ObservationSeries read_data_csv(const std::filesystem::path& path,
                                                    const core::TimeGrid& time, double x0);

} // namespace fracinv::experiments
