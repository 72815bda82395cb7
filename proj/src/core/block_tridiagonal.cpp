#include "fracinv/core/block_tridiagonal.hpp"

#include "fracinv/core/errors.hpp"

#include <algorithm>
#include <utility>

namespace fracinv::core {

namespace {
constexpr double kSingularRcond = 1e-14;
}

BlockTridiagonal::BlockTridiagonal(std::vector<Eigen::MatrixXd> lower,
                                   std::vector<Eigen::MatrixXd> diag,
                                   std::vector<Eigen::MatrixXd> upper)
    : block_(diag.empty() ? 0 : diag.front().rows()), lower_(std::move(lower)) {
    const std::size_t n = diag.size();
    if (n == 0 || lower_.size() != n || upper.size() != n) {
        throw ConfigError("block tridiagonal: inconsistent number of block rows");
    }
    pivots_.reserve(n);
    sweep_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::MatrixXd pivot = std::move(diag[i]);
        if (pivot.rows() != block_ || pivot.cols() != block_) {
            throw ConfigError("block tridiagonal: blocks must be square and equal-sized");
        }
        if (i > 0) pivot.noalias() -= lower_[i] * sweep_[i - 1];
        pivots_.emplace_back(pivot);
        const double rcond = pivots_.back().rcond();
        min_rcond_ = std::min(min_rcond_, rcond);
        if (!(rcond > kSingularRcond)) {
            throw SolverError("block system is singular or ill-conditioned at block row " +
                                  std::to_string(i),
                              0);
        }
        if (i + 1 < n) sweep_[i] = pivots_.back().solve(upper[i]);
    }
}

void BlockTridiagonal::solve(std::span<double> rhs) const {
    const std::size_t n = pivots_.size();
    const auto b = static_cast<std::size_t>(block_);
    if (rhs.size() != n * b) throw ConfigError("block tridiagonal: right-hand side size mismatch");

    auto row = [&](std::size_t i) {
        return Eigen::Map<Eigen::VectorXd>(rhs.data() + i * b, block_);
    };
    Eigen::VectorXd tmp(block_);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = row(i);
        if (i > 0) r.noalias() -= lower_[i] * row(i - 1);
        tmp = pivots_[i].solve(r);
        r = tmp;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        row(i).noalias() -= sweep_[i] * row(i + 1);
    }
}

} // namespace fracinv::core
