#include "fracinv/core/system_config.hpp"

#include "fracinv/core/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fracinv::core {

SystemConfig::SystemConfig(SpatialGrid space_, TimeGrid time_, Eigen::VectorXd orders_,
                           Eigen::MatrixXd coupling_, Eigen::MatrixXd initial_,
                           Eigen::VectorXd diffusion_)
    : space(space_), time(time_), orders(std::move(orders_)), coupling(std::move(coupling_)),
      initial(std::move(initial_)), diffusion(std::move(diffusion_)) {
    validate();
}

SystemConfig::SystemConfig(SpatialGrid space_, TimeGrid time_, Eigen::VectorXd orders_,
                           Eigen::MatrixXd coupling_, Eigen::MatrixXd initial_)
    : SystemConfig(space_, time_, orders_, std::move(coupling_), std::move(initial_),
                   Eigen::VectorXd::Ones(orders_.size())) {}

void SystemConfig::validate() const {
    const auto k = orders.size();
    if (k < 1) throw ConfigError("system needs at least one component");
    if (coupling.rows() != k || coupling.cols() != k) {
        throw ConfigError("coupling matrix must be K x K");
    }
    if (diffusion.size() != k) throw ConfigError("diffusion vector must have K entries");
    if (initial.rows() != k ||
        initial.cols() != static_cast<Eigen::Index>(space.nodes())) {
        throw ConfigError("initial values must be K x (M+1)");
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(orders[i] > 0.0 && orders[i] < 1.0)) {
            throw DomainError("order alpha_" + std::to_string(i + 1) + " = " +
                              std::to_string(orders[i]) + " outside (0, 1)");
        }
        if (!(diffusion[i] > 0.0) || !std::isfinite(diffusion[i])) {
            throw ConfigError("diffusion coefficients must be positive");
        }
        if (initial(i, 0) != 0.0 || initial(i, initial.cols() - 1) != 0.0) {
            throw ConfigError("initial value of component " + std::to_string(i + 1) +
                              " must vanish at the boundary");
        }
    }
    if (!coupling.allFinite() || !initial.allFinite()) {
        throw ConfigError("coupling and initial values must be finite");
    }
}

SystemConfig SystemConfig::with_orders(const Eigen::VectorXd& new_orders) const {
    SystemConfig copy = *this;
    copy.orders = new_orders;
    copy.validate();
    return copy;
}

Eigen::VectorXd sample_dirichlet(const SpatialGrid& grid, const std::function<double(double)>& f) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.nodes()));
    for (std::size_t m = 1; m < grid.intervals(); ++m) {
        v[static_cast<Eigen::Index>(m)] = f(grid.node(m));
    }
    return v;
}

} // namespace fracinv::core
