#pragma once

#include "fracinv/core/block_tridiagonal.hpp"
#include "fracinv/core/l1_weights.hpp"
#include "fracinv/core/system_config.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace fracinv::core {

/// Space-time trajectory u_k(x_m, t_i) of all K components, including the
/// boundary nodes (always zero) and the initial slice.
class SolutionField {
public:
    SolutionField(std::size_t components, SpatialGrid space, TimeGrid time);

    [[nodiscard]] std::size_t components() const noexcept { return components_; }
    [[nodiscard]] const SpatialGrid& space() const noexcept { return space_; }
    [[nodiscard]] const TimeGrid& time() const noexcept { return time_; }

    [[nodiscard]] double operator()(std::size_t k, std::size_t i, std::size_t m) const noexcept {
        return values_[index(k, i, m)];
    }
    [[nodiscard]] double& operator()(std::size_t k, std::size_t i, std::size_t m) noexcept {
        return values_[index(k, i, m)];
    }

    /// All M+1 spatial values of component k at time node i.
    [[nodiscard]] std::span<const double> slice(std::size_t k, std::size_t i) const noexcept;
    [[nodiscard]] std::span<double> slice(std::size_t k, std::size_t i) noexcept;

    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

private:
    [[nodiscard]] std::size_t index(std::size_t k, std::size_t i, std::size_t m) const noexcept {
        return (k * (time_.steps() + 1) + i) * space_.nodes() + m;
    }

    std::size_t components_;
    SpatialGrid space_;
    TimeGrid time_;
    std::vector<double> values_;
};

/// Fully implicit L1 / central-difference time stepper. The block system
///
///   scale_k b_0 u_k^n - a_k (D_h u_k^n) - sum_l c_kl u_l^n = scale_k b_0 u_k^{n-1} - H_k^n
///
/// has the same matrix at every step, so it is factored once on construction.
/// Interior unknowns are ordered node-major: entry (m-1)*K + k.
class ForwardStepper {
public:
    explicit ForwardStepper(const SystemConfig& config);

    [[nodiscard]] const std::vector<L1Weights>& weights() const noexcept { return weights_; }

    /// history and previous are K x (M-1) interior arrays (row k = component k).
    /// Returns the interior values at the new time level.
    [[nodiscard]] Eigen::MatrixXd step(const Eigen::MatrixXd& history,
                                       const Eigen::MatrixXd& previous) const;

private:
    std::size_t components_;
    std::size_t interior_;
    std::vector<L1Weights> weights_;
    BlockTridiagonal system_;
};

/// One implicit step given precomputed weights, history and previous interior slice.
[[nodiscard]] Eigen::MatrixXd step_system(const SystemConfig& config,
                                          const Eigen::MatrixXd& history,
                                          const Eigen::MatrixXd& previous);

/// Marches from u^0 = initial values to t_N. Throws BlowUpError on non-finite values.
[[nodiscard]] SolutionField solve_forward(const SystemConfig& config);

} // namespace fracinv::core
