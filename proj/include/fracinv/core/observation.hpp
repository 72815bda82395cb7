#pragma once

#include "fracinv/core/forward_solver.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fracinv::core {

/// Pointwise time series g_i = u_k(x0, t_i), i = 1..N, for a set of observed
/// components. Components are 0-based and kept in ascending order; t_0 is
/// excluded.
struct ObservationSeries {
    std::vector<std::size_t> components;
    double position = 0.0;   // x0
    std::size_t node = 0;    // grid node of x0 on the grid the series came from
    TimeGrid time{1.0, 1};
    std::vector<std::vector<double>> values; // values[j][i-1] for components[j]
    double noise_level = 0.0;
    std::optional<std::uint64_t> seed;

    [[nodiscard]] std::size_t samples() const noexcept { return time.steps(); }

    /// Observed values stacked component after component.
    [[nodiscard]] std::vector<double> stacked() const;
};

/// Throws ConfigError on an empty set or an index >= count. Duplicates are
/// allowed; they yield repeated residual blocks.
void check_components(const std::vector<std::size_t>& components, std::size_t count);

/// Extracts u_k(x0, t_i) for the given components. x0 must lie within h/2 of a
/// node. With noise_level > 0 each sample becomes g_i (1 + delta xi_i), xi_i
/// uniform on [-1, 1] from a generator seeded with `seed`.
[[nodiscard]] ObservationSeries observe(const SolutionField& field,
                                        std::vector<std::size_t> components, double x0,
                                        double noise_level = 0.0, std::uint64_t seed = 0);

/// Applies multiplicative uniform noise to a clean series.
[[nodiscard]] ObservationSeries add_noise(const ObservationSeries& clean, double noise_level,
                                          std::uint64_t seed);

/// Keeps every stride-th time sample so data from a finer time grid can be
/// matched to a coarser inversion grid.
[[nodiscard]] ObservationSeries subsample(const ObservationSeries& series, std::size_t stride);

/// Uniform variate on [-1, 1] from the top 53 bits of a 64-bit word. Fixed
/// mapping so noise realizations do not depend on the standard library.
[[nodiscard]] double symmetric_unit(std::uint64_t bits) noexcept;

} // namespace fracinv::core
