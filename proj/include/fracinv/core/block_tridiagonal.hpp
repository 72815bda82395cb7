#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace fracinv::core {

/// Block tridiagonal matrix with square blocks of size b, factored once by
/// block Gaussian elimination (block Thomas) and reused for many right-hand
/// sides. Each pivot block is factored with partial pivoting.
///
///   | D0 U0          |
///   | L1 D1 U1       |
///   |    .  .  .     |
///   |         Ln Dn  |
class BlockTridiagonal {
public:
    /// lower[0] and upper[n-1] are ignored. Throws SolverError(step 0) when a
    /// pivot block is singular to working precision.
    BlockTridiagonal(std::vector<Eigen::MatrixXd> lower, std::vector<Eigen::MatrixXd> diag,
                     std::vector<Eigen::MatrixXd> upper);

    [[nodiscard]] std::size_t block_rows() const noexcept { return pivots_.size(); }
    [[nodiscard]] Eigen::Index block_size() const noexcept { return block_; }

    /// Solves A x = rhs in place; rhs is stored block-row-major.
    void solve(std::span<double> rhs) const;

    /// Smallest reciprocal condition estimate over the pivot blocks.
    [[nodiscard]] double min_pivot_rcond() const noexcept { return min_rcond_; }

private:
    Eigen::Index block_;
    std::vector<Eigen::MatrixXd> lower_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> pivots_;
    std::vector<Eigen::MatrixXd> sweep_;  // pivot_i^{-1} U_i
    double min_rcond_ = 1.0;
};

} // namespace fracinv::core
