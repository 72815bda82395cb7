#pragma once

#include "fracinv/core/observation.hpp"
#include "fracinv/core/system_config.hpp"

#include <Eigen/Dense>

namespace fracinv::inverse {

/// Order identification problem: every parameter of `base` except the orders
/// is known; `data` holds the observed series on the same time grid. The
/// observation position is re-snapped onto the base spatial grid, so data may
/// come from a finer spatial grid.
class InverseProblem {
public:
    InverseProblem(core::SystemConfig base, core::ObservationSeries data);

    [[nodiscard]] const core::SystemConfig& base() const noexcept { return base_; }
    [[nodiscard]] const core::ObservationSeries& data() const noexcept { return data_; }
    [[nodiscard]] std::size_t unknowns() const noexcept { return base_.components(); }
    [[nodiscard]] std::size_t residual_size() const noexcept {
        return data_.components.size() * data_.samples();
    }

private:
    core::SystemConfig base_;
    core::ObservationSeries data_;
};

/// r(alpha): simulated minus observed values at the observation node, stacked
/// by observed component in ascending index order.
[[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& orders, const InverseProblem& problem);

struct JacobianEvaluation {
    Eigen::MatrixXd jacobian;     // residual_size x K
    Eigen::VectorXd residual;     // r(alpha)
    Eigen::VectorXd steps;        // signed perturbation used per column
};

/// One-sided difference quotient, column k = (r(alpha + eps e_k) - r(alpha)) / eps.
/// eps flips sign for component k when alpha_k + eps >= 1 - margin. Costs exactly
/// K forward solves beyond the base residual (which may be passed in).
[[nodiscard]] JacobianEvaluation jacobian_fd(const Eigen::VectorXd& orders,
                                             const InverseProblem& problem, double fd_step,
                                             double margin = 1e-3,
                                             const Eigen::VectorXd* base_residual = nullptr);

} // namespace fracinv::inverse
