#include "fracinv/inverse/gauss_newton.hpp"

#include "fracinv/core/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fracinv::inverse {

void GaussNewtonSettings::validate() const {
    if (!(tolerance > 0.0)) throw ConfigError("stopping tolerance must be positive");
    if (!(fd_step != 0.0 && std::abs(fd_step) < 1.0)) {
        throw ConfigError("finite-difference step must satisfy 0 < |eps| < 1");
    }
    if (max_iterations < 1) throw ConfigError("max iterations must be at least 1");
    if (!(margin > 0.0 && margin < 0.5)) throw ConfigError("box margin must lie in (0, 0.5)");
}

std::string_view to_string(Status s) noexcept {
    return s == Status::converged ? "converged" : "diverged";
}

std::string_view to_string(DivergenceReason r) noexcept {
    switch (r) {
    case DivergenceReason::none: return "none";
    case DivergenceReason::left_domain: return "left-domain";
    case DivergenceReason::non_finite: return "non-finite";
    case DivergenceReason::max_iterations: return "max-iterations";
    case DivergenceReason::singular_step: return "singular-step";
    }
    return "unknown";
}

std::string ReconstructionResult::label() const {
    if (converged()) return "converged";
    return "diverged:" + std::string(to_string(reason));
}

std::optional<Eigen::VectorXd> gauss_newton_step(const Eigen::MatrixXd& jacobian,
                                                 const Eigen::VectorXd& residual) {
    if (jacobian.rows() != residual.size()) {
        throw ConfigError("Jacobian rows must match residual length");
    }
    if (jacobian.rows() < jacobian.cols() || !jacobian.allFinite() || !residual.allFinite()) {
        return std::nullopt;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double largest = sigma[0];
    const double smallest = sigma[sigma.size() - 1];
    if (!(largest > 0.0) || smallest * smallest < 1e-14 * largest * largest) {
        return std::nullopt;
    }
    Eigen::VectorXd step = -svd.solve(residual);
    return step;
}

namespace {

bool inside_box(const Eigen::VectorXd& a, double margin) {
    return ((a.array() >= margin) && (a.array() <= 1.0 - margin)).all();
}

} // namespace

ReconstructionResult reconstruct(const Eigen::VectorXd& initial, const InverseProblem& problem,
                                 const GaussNewtonSettings& settings,
                                 const std::optional<Eigen::VectorXd>& truth) {
    settings.validate();
    if (initial.size() != static_cast<Eigen::Index>(problem.unknowns())) {
        throw ConfigError("initial guess must have K entries");
    }
    if (!((initial.array() > 0.0) && (initial.array() < 1.0)).all()) {
        throw DomainError("initial guess must lie in (0, 1)^K");
    }
    if (truth && truth->size() != initial.size()) {
        throw ConfigError("truth must have K entries");
    }

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ReconstructionResult result;
    Eigen::VectorXd alpha = initial;
    result.iterates.push_back(alpha);

    auto diverge = [&](DivergenceReason why) {
        result.status = Status::diverged;
        result.reason = why;
        return result;
    };

    Eigen::VectorXd r;
    try {
        r = residual(alpha, problem);
    } catch (const SolverError&) {
        result.residual_norms.push_back(nan);
        return diverge(DivergenceReason::non_finite);
    }
    result.residual_norms.push_back(r.norm());

    for (std::size_t m = 0; m < settings.max_iterations; ++m) {
        JacobianEvaluation jac;
        try {
            jac = jacobian_fd(alpha, problem, settings.fd_step, settings.margin, &r);
        } catch (const SolverError&) {
            return diverge(DivergenceReason::non_finite);
        } catch (const DomainError&) {
            return diverge(DivergenceReason::left_domain);
        }
        const auto step = gauss_newton_step(jac.jacobian, r);
        if (!step) return diverge(DivergenceReason::singular_step);

        const Eigen::VectorXd next = alpha + *step;
        result.iterations = m + 1;
        result.iterates.push_back(next);
        if (!next.allFinite()) {
            result.residual_norms.push_back(nan);
            return diverge(DivergenceReason::non_finite);
        }
        if (!inside_box(next, settings.margin)) {
            result.residual_norms.push_back(nan);
            return diverge(DivergenceReason::left_domain);
        }
        try {
            r = residual(next, problem);
        } catch (const SolverError&) {
            result.residual_norms.push_back(nan);
            return diverge(DivergenceReason::non_finite);
        }
        result.residual_norms.push_back(r.norm());
        alpha = next;

        if (step->norm() <= settings.tolerance) {
            result.status = Status::converged;
            result.reason = DivergenceReason::none;
            result.orders = alpha;
            if (truth) {
                result.relative_errors_pct =
                    ((alpha - *truth).array().abs() / truth->array() * 100.0).matrix();
            }
            return result;
        }
    }
    return diverge(DivergenceReason::max_iterations);
}

} // namespace fracinv::inverse
