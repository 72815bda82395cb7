#include "fracinv/core/grid.hpp"

#include "fracinv/core/errors.hpp"

#include <cmath>
#include <string>

namespace fracinv::core {

SpatialGrid::SpatialGrid(double length, std::size_t intervals)
    : length_(length), intervals_(intervals), spacing_(0.0) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError("spatial length must be positive and finite");
    }
    if (intervals < 2) {
        throw ConfigError("spatial grid needs at least 2 intervals");
    }
    spacing_ = length / static_cast<double>(intervals);
}

double SpatialGrid::node(std::size_t m) const noexcept {
    // End node returned exactly so that node(M) == L.
    if (m == intervals_) return length_;
    return spacing_ * static_cast<double>(m);
}

std::size_t SpatialGrid::snap(double x) const {
    if (!(x > 0.0 && x < length_)) {
        throw PlacementError("observation point " + std::to_string(x) +
                             " is not inside (0, L)");
    }
    const auto m = static_cast<std::size_t>(std::llround(x / spacing_));
    // Tolerate representation rounding on the half-spacing boundary.
    if (std::abs(node(m) - x) > 0.5 * spacing_ * (1.0 + 1e-12)) {
        throw PlacementError("observation point " + std::to_string(x) +
                             " is farther than h/2 from every grid node");
    }
    if (m == 0 || m == intervals_) {
        throw PlacementError("observation point snaps to a boundary node");
    }
    return m;
}

TimeGrid::TimeGrid(double horizon, std::size_t steps)
    : horizon_(horizon), steps_(steps), step_(0.0) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ConfigError("time horizon must be positive and finite");
    }
    if (steps < 1) {
        throw ConfigError("time grid needs at least one step");
    }
    step_ = horizon / static_cast<double>(steps);
}

double TimeGrid::node(std::size_t i) const noexcept {
    if (i == steps_) return horizon_;
    return horizon_ * static_cast<double>(i) / static_cast<double>(steps_);
}

} // namespace fracinv::core
