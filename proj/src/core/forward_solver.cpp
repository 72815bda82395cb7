#include "fracinv/core/forward_solver.hpp"

#include "fracinv/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fracinv::core {

SolutionField::SolutionField(std::size_t components, SpatialGrid space, TimeGrid time)
    : components_(components), space_(space), time_(time),
      values_(components * (time.steps() + 1) * space.nodes(), 0.0) {}

std::span<const double> SolutionField::slice(std::size_t k, std::size_t i) const noexcept {
    return {values_.data() + index(k, i, 0), space_.nodes()};
}

std::span<double> SolutionField::slice(std::size_t k, std::size_t i) noexcept {
    return {values_.data() + index(k, i, 0), space_.nodes()};
}

namespace {

std::vector<L1Weights> build_weights(const SystemConfig& config) {
    std::vector<L1Weights> w;
    w.reserve(config.components());
    for (Eigen::Index k = 0; k < config.orders.size(); ++k) {
        w.push_back(l1_weights(config.orders[k], config.time));
    }
    return w;
}

BlockTridiagonal assemble(const SystemConfig& config, const std::vector<L1Weights>& weights) {
    const auto kc = static_cast<Eigen::Index>(config.components());
    const std::size_t rows = config.space.interior();
    const double inv_h2 = 1.0 / (config.space.spacing() * config.space.spacing());

    Eigen::MatrixXd diag = -config.coupling;
    Eigen::MatrixXd off = Eigen::MatrixXd::Zero(kc, kc);
    for (Eigen::Index k = 0; k < kc; ++k) {
        const auto& wk = weights[static_cast<std::size_t>(k)];
        diag(k, k) += wk.scale * wk.coefficients[0] + 2.0 * config.diffusion[k] * inv_h2;
        off(k, k) = -config.diffusion[k] * inv_h2;
    }
    try {
        return BlockTridiagonal(std::vector<Eigen::MatrixXd>(rows, off),
                                std::vector<Eigen::MatrixXd>(rows, diag),
                                std::vector<Eigen::MatrixXd>(rows, off));
    } catch (const SolverError& e) {
        // The matrix is step-invariant; the first step that needs it is step 1.
        throw SolverError(e.what(), 1);
    }
}

} // namespace

ForwardStepper::ForwardStepper(const SystemConfig& config)
    : components_(config.components()), interior_(config.space.interior()),
      weights_(build_weights(config)), system_(assemble(config, weights_)) {}

Eigen::MatrixXd ForwardStepper::step(const Eigen::MatrixXd& history,
                                     const Eigen::MatrixXd& previous) const {
    const auto kc = static_cast<Eigen::Index>(components_);
    const auto mi = static_cast<Eigen::Index>(interior_);
    if (history.rows() != kc || history.cols() != mi || previous.rows() != kc ||
        previous.cols() != mi) {
        throw ConfigError("step: history and previous slice must be K x (M-1)");
    }
    // Column-major K x (M-1) storage is exactly the node-major unknown ordering.
    Eigen::MatrixXd rhs(kc, mi);
    for (Eigen::Index k = 0; k < kc; ++k) {
        const auto& wk = weights_[static_cast<std::size_t>(k)];
        rhs.row(k) = wk.scale * wk.coefficients[0] * previous.row(k) - history.row(k);
    }
    system_.solve(std::span<double>(rhs.data(), static_cast<std::size_t>(rhs.size())));
    return rhs;
}

Eigen::MatrixXd step_system(const SystemConfig& config, const Eigen::MatrixXd& history,
                            const Eigen::MatrixXd& previous) {
    return ForwardStepper(config).step(history, previous);
}

SolutionField solve_forward(const SystemConfig& config) {
    config.validate();
    const ForwardStepper stepper(config);
    const std::size_t kc = config.components();
    const std::size_t n_steps = config.time.steps();
    const std::size_t mi = config.space.interior();
    const auto kci = static_cast<Eigen::Index>(kc);
    const auto mii = static_cast<Eigen::Index>(mi);

    SolutionField field(kc, config.space, config.time);
    for (std::size_t k = 0; k < kc; ++k) {
        auto s = field.slice(k, 0);
        for (std::size_t m = 1; m <= mi; ++m) s[m] = config.initial(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
    }

    // increments[k][(j-1)*(M-1) + m-1] = u_k^j - u_k^{j-1} at interior node m
    std::vector<std::vector<double>> increments(kc);
    for (auto& inc : increments) inc.reserve(n_steps * mi);
    Eigen::MatrixXd previous = config.initial.block(0, 1, kci, mii);
    Eigen::MatrixXd history(kci, mii);
    std::vector<double> acc(mi);

    const auto& weights = stepper.weights();
    for (std::size_t n = 1; n <= n_steps; ++n) {
        for (std::size_t k = 0; k < kc; ++k) {
            const auto& b = weights[k].coefficients;
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t j = 1; j < n; ++j) {
                const double w = b[n - j];
                const double* d = increments[k].data() + (j - 1) * mi;
                for (std::size_t m = 0; m < mi; ++m) acc[m] += w * d[m];
            }
            for (std::size_t m = 0; m < mi; ++m) {
                history(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
                    weights[k].scale * acc[m];
            }
        }

        Eigen::MatrixXd current = stepper.step(history, previous);
        if (!current.allFinite()) {
            throw BlowUpError("non-finite values in forward solution", n);
        }
        for (std::size_t k = 0; k < kc; ++k) {
            auto s = field.slice(k, n);
            const auto ki = static_cast<Eigen::Index>(k);
            for (std::size_t m = 1; m <= mi; ++m) {
                const double v = current(ki, static_cast<Eigen::Index>(m - 1));
                s[m] = v;
                increments[k].push_back(v - previous(ki, static_cast<Eigen::Index>(m - 1)));
            }
        }
        previous = std::move(current);
    }
    return field;
}

} // namespace fracinv::core
