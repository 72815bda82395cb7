#include "fracinv/inverse/problem.hpp"

#include "fracinv/core/errors.hpp"
#include "fracinv/core/forward_solver.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace fracinv::inverse {

namespace {

std::string format_orders(const Eigen::VectorXd& orders) {
    std::ostringstream os;
    os.precision(10);
    os << " at alpha = (";
    for (Eigen::Index i = 0; i < orders.size(); ++i) os << (i ? ", " : "") << orders[i];
    os << ')';
    return os.str();
}

} // namespace

InverseProblem::InverseProblem(core::SystemConfig base, core::ObservationSeries data)
    : base_(std::move(base)), data_(std::move(data)) {
    core::check_components(data_.components, base_.components());
    if (data_.values.size() != data_.components.size()) {
        throw ConfigError("observation data must hold one series per observed component");
    }
    if (data_.samples() != base_.time.steps()) {
        throw ConfigError("observation series length must equal the number of time steps");
    }
    for (const auto& v : data_.values) {
        if (v.size() != data_.samples()) {
            throw ConfigError("observation series length must equal the number of time steps");
        }
    }
    data_.node = base_.space.snap(data_.position);
}

Eigen::VectorXd residual(const Eigen::VectorXd& orders, const InverseProblem& problem) {
    if (orders.size() != static_cast<Eigen::Index>(problem.unknowns())) {
        throw ConfigError("order vector must have K entries");
    }
    core::SolutionField field = [&] {
        try {
            return core::solve_forward(problem.base().with_orders(orders));
        } catch (const BlowUpError& e) {
            throw BlowUpError(e.what() + format_orders(orders), e.step());
        } catch (const SolverError& e) {
            throw SolverError(e.what() + format_orders(orders), e.step());
        } catch (const DomainError& e) {
            throw DomainError(e.what() + format_orders(orders));
        }
    }();

    const auto& data = problem.data();
    const std::size_t n = data.samples();
    Eigen::VectorXd r(static_cast<Eigen::Index>(problem.residual_size()));
    Eigen::Index row = 0;
    for (std::size_t j = 0; j < data.components.size(); ++j) {
        const std::size_t k = data.components[j];
        for (std::size_t i = 1; i <= n; ++i) {
            r[row++] = field(k, i, data.node) - data.values[j][i - 1];
        }
    }
    return r;
}

JacobianEvaluation jacobian_fd(const Eigen::VectorXd& orders, const InverseProblem& problem,
                               double fd_step, double margin,
                               const Eigen::VectorXd* base_residual) {
    if (!(fd_step != 0.0 && std::abs(fd_step) < 1.0)) {
        throw ConfigError("finite-difference step must satisfy 0 < |eps| < 1");
    }
    JacobianEvaluation out;
    out.residual = base_residual ? *base_residual : residual(orders, problem);
    const auto kc = orders.size();
    out.jacobian.resize(out.residual.size(), kc);
    out.steps.resize(kc);
    for (Eigen::Index k = 0; k < kc; ++k) {
        double eps = fd_step;
        if (orders[k] + eps >= 1.0 - margin || orders[k] + eps <= 0.0) eps = -eps;
        const double shifted = orders[k] + eps;
        if (!(shifted > 0.0 && shifted < 1.0)) {
            throw DomainError("perturbed order leaves (0, 1)" + format_orders(orders));
        }
        Eigen::VectorXd perturbed = orders;
        perturbed[k] = shifted;
        out.jacobian.col(k) = (residual(perturbed, problem) - out.residual) / eps;
        out.steps[k] = eps;
    }
    return out;
}

} // namespace fracinv::inverse
