#pragma once

#include "fracinv/core/system_config.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace fracinv::core {

/// Structural conditions under which observing a single component at one
/// point determines all orders. Purely informational: solves run regardless.
struct UniquenessReport {
    /// Off-diagonal pairs (k, l), 0-based, with c_kl <= 0.
    std::vector<std::pair<std::size_t, std::size_t>> non_cooperative;
    /// Rows with sum_l c_kl > 0.
    std::vector<std::size_t> positive_row_sums;
    /// Components whose initial value is negative somewhere or identically zero.
    std::vector<std::size_t> bad_initial_values;
    /// alpha_1 >= ... >= alpha_K; not required by the solver.
    bool orders_descending = true;

    [[nodiscard]] bool cooperative() const noexcept { return non_cooperative.empty(); }
    [[nodiscard]] bool dissipative() const noexcept { return positive_row_sums.empty(); }
    [[nodiscard]] bool initial_values_ok() const noexcept { return bad_initial_values.empty(); }
    [[nodiscard]] bool passes() const noexcept {
        return cooperative() && dissipative() && initial_values_ok();
    }

    [[nodiscard]] std::string describe() const;
};

[[nodiscard]] UniquenessReport validate_uniqueness_conditions(const SystemConfig& config);

} // namespace fracinv::core
