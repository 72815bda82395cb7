#pragma once

#include "fracinv/core/system_config.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace fracinv::experiments {

struct GridSpec {
    std::size_t time_steps = 100;  // N
    std::size_t intervals = 100;   // M
    double length = 1.0;           // L
    double horizon = 1.0;          // T
};

/// A fully specified system together with the orders used to generate data.
/// config.orders == truth.
struct PaperSetup {
    core::SystemConfig config;
    Eigen::VectorXd truth;
};

/// Initial values used by both presets: u0_1 = 2 q and u0_k = q for k >= 2,
/// with q(x) = 1 - 4 (x/L - 1/2)^2.
[[nodiscard]] Eigen::MatrixXd paper_initial_values(std::size_t components,
                                                   const core::SpatialGrid& space);

/// K = 2: c11 = c22 = -1, c12 = c21 = 1, truth (0.9, 0.5).
[[nodiscard]] PaperSetup paper_config_k2(const GridSpec& grid = {});

/// K = 3: c_kk = -2, c_kl = 1, truth (0.9, 0.6, 0.5).
[[nodiscard]] PaperSetup paper_config_k3(const GridSpec& grid = {});

/// Generic system with the preset initial values and unit diffusion.
[[nodiscard]] PaperSetup make_setup(const Eigen::VectorXd& truth, const Eigen::MatrixXd& coupling,
                                    const GridSpec& grid);

} // namespace fracinv::experiments
