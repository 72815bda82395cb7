#pragma once

#include "fracinv/inverse/problem.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace fracinv::inverse {

struct GaussNewtonSettings {
    double tolerance = 1e-6;       // stop when |s_m| <= tolerance
    double fd_step = 1e-6;         // forward difference perturbation
    std::size_t max_iterations = 50;
    double margin = 1e-3;          // admissible box [margin, 1 - margin]^K

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

enum class Status { converged, diverged };

enum class DivergenceReason { none, left_domain, non_finite, max_iterations, singular_step };

[[nodiscard]] std::string_view to_string(Status s) noexcept;
[[nodiscard]] std::string_view to_string(DivergenceReason r) noexcept;

struct ReconstructionResult {
    Status status = Status::diverged;
    DivergenceReason reason = DivergenceReason::none;
    Eigen::VectorXd orders;                 // alpha_*, meaningful when converged
    std::size_t iterations = 0;             // Gauss-Newton steps taken
    std::vector<Eigen::VectorXd> iterates;  // alpha_0 .. alpha_final
    std::vector<double> residual_norms;     // |r| per iterate; NaN where not computable
    std::optional<Eigen::VectorXd> relative_errors_pct;  // vs truth, when converged

    [[nodiscard]] bool converged() const noexcept { return status == Status::converged; }
    /// "converged" or "diverged:<reason>".
    [[nodiscard]] std::string label() const;
};

/// Least-squares step s minimizing |J s + r|, i.e. -(J^T J)^{-1} J^T r, computed
/// from an SVD of J. Returns nullopt when J^T J is numerically singular
/// (sigma_min^2 < 1e-14 sigma_max^2).
[[nodiscard]] std::optional<Eigen::VectorXd> gauss_newton_step(const Eigen::MatrixXd& jacobian,
                                                               const Eigen::VectorXd& residual);

/// Plain Gauss-Newton iteration (no damping, no line search) from `initial`.
/// Every failure mode is reported through the result status.
[[nodiscard]] ReconstructionResult reconstruct(const Eigen::VectorXd& initial,
                                               const InverseProblem& problem,
                                               const GaussNewtonSettings& settings = {},
                                               const std::optional<Eigen::VectorXd>& truth = std::nullopt);

} // namespace fracinv::inverse
