#include "fracinv/oracle/analytic.hpp"

#include "fracinv/core/errors.hpp"
#include "fracinv/core/forward_solver.hpp"
#include "fracinv/oracle/mittag_leffler.hpp"

#include <cmath>
#include <numbers>

namespace fracinv::oracle {

double analytic_single_component(double order, double coupling, double length, double x0,
                                 double t) {
    using std::numbers::pi;
    if (!(length > 0.0)) throw DomainError("length must be positive");
    const double rate = pi * pi / (length * length) - coupling;
    if (!(rate > 0.0)) throw DomainError("analytic solution requires pi^2/L^2 - c > 0");
    if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
    const double profile = std::sin(pi * x0 / length);
    if (t == 0.0) return profile;
    return mittag_leffler(order, -rate * std::pow(t, order)) * profile;
}

std::vector<ConvergenceRow> convergence_study(
    double order, const std::vector<std::pair<std::size_t, std::size_t>>& grids,
    const ConvergenceSetup& setup) {
    using std::numbers::pi;
    const double exact = setup.amplitude *
        analytic_single_component(order, setup.coupling, setup.length, setup.x0, setup.horizon);

    std::vector<ConvergenceRow> rows;
    for (const auto& [n, m] : grids) {
        core::SpatialGrid space(setup.length, m);
        core::TimeGrid time(setup.horizon, n);
        const double amplitude = setup.amplitude;
        const double length = setup.length;
        Eigen::MatrixXd u0 = core::sample_dirichlet(space, [=](double x) {
                                 return amplitude * std::sin(pi * x / length);
                             }).transpose();
        core::SystemConfig config(space, time, Eigen::VectorXd::Constant(1, order),
                                  Eigen::MatrixXd::Constant(1, 1, setup.coupling), u0);
        const auto field = core::solve_forward(config);

        ConvergenceRow row;
        row.time_steps = n;
        row.intervals = m;
        row.numerical = field(0, n, space.snap(setup.x0));
        row.exact = exact;
        row.abs_error = std::abs(row.numerical - exact);
        row.rel_error = exact != 0.0 ? row.abs_error / std::abs(exact) : row.abs_error;
        if (!rows.empty() && row.abs_error > 0.0) row.ratio = rows.back().abs_error / row.abs_error;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fracinv::oracle
