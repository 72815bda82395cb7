#pragma once

#include "fracinv/core/grid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace fracinv::core {

/// One instance of the coupled subdiffusion system
///
///   d_t^{alpha_k}(u_k - u0_k) = a_k u_k'' + sum_l c_kl u_l   on (0, L) x (0, T),
///   u_k = 0 at x = 0 and x = L.
///
/// Coupling and diffusion are constant in space. Orders are not required to be
/// sorted; the solver is symmetric in component labels.
struct SystemConfig {
    SystemConfig(SpatialGrid space, TimeGrid time, Eigen::VectorXd orders,
                 Eigen::MatrixXd coupling, Eigen::MatrixXd initial,
                 Eigen::VectorXd diffusion);

    /// Unit diffusion for every component.
    SystemConfig(SpatialGrid space, TimeGrid time, Eigen::VectorXd orders,
                 Eigen::MatrixXd coupling, Eigen::MatrixXd initial);

    SpatialGrid space;
    TimeGrid time;
    Eigen::VectorXd orders;     // K
    Eigen::MatrixXd coupling;   // K x K
    Eigen::MatrixXd initial;    // K x (M+1), samples at grid nodes
    Eigen::VectorXd diffusion;  // K

    [[nodiscard]] std::size_t components() const noexcept {
        return static_cast<std::size_t>(orders.size());
    }

    /// Throws DomainError / ConfigError when an invariant is violated.
    void validate() const;

    /// Copy with different orders (validated).
    [[nodiscard]] SystemConfig with_orders(const Eigen::VectorXd& new_orders) const;
};

/// Samples f at the interior nodes; the two boundary entries are set to exactly zero.
[[nodiscard]] Eigen::VectorXd sample_dirichlet(const SpatialGrid& grid, const std::function<double(double)>& f);

} // namespace fracinv::core
