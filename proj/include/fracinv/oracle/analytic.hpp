#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fracinv::oracle {

/// Exact value at (x0, t) of the single-component problem
///   d_t^alpha (u - u0) = u'' + c u on (0, L), u = 0 at the ends, u0 = sin(pi x / L):
/// u(x0, t) = E_alpha(-(pi^2/L^2 - c) t^alpha) sin(pi x0 / L).
/// Requires 0 < alpha <= 1 and pi^2/L^2 - c > 0.
[[nodiscard]] double analytic_single_component(double order, double coupling, double length,
                                               double x0, double t);

struct ConvergenceRow {
    std::size_t time_steps = 0;
    std::size_t intervals = 0;
    double numerical = 0.0;
    double exact = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double ratio = 0.0;  // previous abs_error / this abs_error; 0 for the first row
};

struct ConvergenceSetup {
    double coupling = 0.0;
    double length = 1.0;
    double horizon = 1.0;
    double x0 = 0.5;
    double amplitude = 1.0;  // u0 = amplitude * sin(pi x / L)
};

/// Runs the forward solver on the K = 1 sine problem for each (N, M) and
/// compares u(x0, T) against the closed form.
[[nodiscard]] std::vector<ConvergenceRow> convergence_study(
    double order, const std::vector<std::pair<std::size_t, std::size_t>>& grids,
    const ConvergenceSetup& setup = {});

} // namespace fracinv::oracle
