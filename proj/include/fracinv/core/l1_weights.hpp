#pragma once

#include "fracinv/core/grid.hpp"

#include <vector>

namespace fracinv::core {

/// Caputo L1 quadrature for one order alpha on a uniform time grid:
///
///   d^alpha u(t_n) ~ scale * sum_{j=0}^{n-1} b_j (u^{n-j} - u^{n-j-1}),
///   b_j = (j+1)^{1-alpha} - j^{1-alpha},   scale = tau^{-alpha} / Gamma(2-alpha).
struct L1Weights {
    double order = 0.0;
    std::vector<double> coefficients; // b_0 .. b_{N-1}
    double scale = 0.0;
};

[[nodiscard]] L1Weights l1_weights(double order, const TimeGrid& time);

} // namespace fracinv::core
