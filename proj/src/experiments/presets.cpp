#include "fracinv/experiments/presets.hpp"

namespace fracinv::experiments {

Eigen::MatrixXd paper_initial_values(std::size_t components, const core::SpatialGrid& space) {
    const double length = space.length();
    const Eigen::VectorXd q = core::sample_dirichlet(space, [length](double x) {
        const double s = x / length - 0.5;
        return 1.0 - 4.0 * s * s;
    });
    Eigen::MatrixXd u0(static_cast<Eigen::Index>(components), q.size());
    for (Eigen::Index k = 0; k < u0.rows(); ++k) u0.row(k) = q.transpose();
    u0.row(0) *= 2.0;
    return u0;
}

PaperSetup make_setup(const Eigen::VectorXd& truth, const Eigen::MatrixXd& coupling,
                      const GridSpec& grid) {
    core::SpatialGrid space(grid.length, grid.intervals);
    core::TimeGrid time(grid.horizon, grid.time_steps);
    core::SystemConfig config(space, time, truth, coupling,
                              paper_initial_values(static_cast<std::size_t>(truth.size()), space));
    return {std::move(config), truth};
}

PaperSetup paper_config_k2(const GridSpec& grid) {
    Eigen::MatrixXd c(2, 2);
    c << -1.0, 1.0,
          1.0, -1.0;
    Eigen::VectorXd truth(2);
    truth << 0.9, 0.5;
    return make_setup(truth, c, grid);
}

PaperSetup paper_config_k3(const GridSpec& grid) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(3, 3, 1.0);
    c.diagonal().setConstant(-2.0);
    Eigen::VectorXd truth(3);
    truth << 0.9, 0.6, 0.5;
    return make_setup(truth, c, grid);
}

} // namespace fracinv::experiments
