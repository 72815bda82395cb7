#pragma once

#include <cstddef>

namespace fracinv::core {

/// Uniform partition of (0, L) into M intervals. Nodes 0 and M are the
/// Dirichlet boundary; M - 1 interior unknowns.
class SpatialGrid {
public:
    SpatialGrid(double length, std::size_t intervals);

    [[nodiscard]] double length() const noexcept { return length_; }
    [[nodiscard]] std::size_t intervals() const noexcept { return intervals_; }
    [[nodiscard]] std::size_t nodes() const noexcept { return intervals_ + 1; }
    [[nodiscard]] std::size_t interior() const noexcept { return intervals_ - 1; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }
    [[nodiscard]] double node(std::size_t m) const noexcept;

    /// Index of the node within half a spacing of x; throws PlacementError otherwise.
    [[nodiscard]] std::size_t snap(double x) const;

private:
    double length_;
    std::size_t intervals_;
    double spacing_;
};

/// Equidistant time partition 0 = t_0 < ... < t_N = T.
class TimeGrid {
public:
    TimeGrid(double horizon, std::size_t steps);

    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
    [[nodiscard]] double step() const noexcept { return step_; }
    [[nodiscard]] double node(std::size_t i) const noexcept;

private:
    double horizon_;
    std::size_t steps_;
    double step_;
};

} // namespace fracinv::core
