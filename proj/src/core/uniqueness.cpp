#include "fracinv/core/uniqueness.hpp"

#include <sstream>

namespace fracinv::core {

UniquenessReport validate_uniqueness_conditions(const SystemConfig& config) {
    UniquenessReport report;
    const auto k = config.coupling.rows();
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            if (r != c && !(config.coupling(r, c) > 0.0)) {
                report.non_cooperative.emplace_back(static_cast<std::size_t>(r),
                                                    static_cast<std::size_t>(c));
            }
        }
        if (config.coupling.row(r).sum() > 0.0) {
            report.positive_row_sums.push_back(static_cast<std::size_t>(r));
        }
        const auto u0 = config.initial.row(r);
        if (u0.minCoeff() < 0.0 || !(u0.maxCoeff() > 0.0)) {
            report.bad_initial_values.push_back(static_cast<std::size_t>(r));
        }
    }
    for (Eigen::Index i = 1; i < config.orders.size(); ++i) {
        if (config.orders[i] > config.orders[i - 1]) report.orders_descending = false;
    }
    return report;
}

std::string UniquenessReport::describe() const {
    std::ostringstream os;
    os << "cooperative coupling (c_kl > 0, k != l): " << (cooperative() ? "pass" : "FAIL");
    for (const auto& [r, c] : non_cooperative) os << " (" << r + 1 << ',' << c + 1 << ')';
    os << "\nnonpositive row sums: " << (dissipative() ? "pass" : "FAIL");
    for (auto r : positive_row_sums) os << ' ' << r + 1;
    os << "\ninitial values >= 0 and not identically 0: " << (initial_values_ok() ? "pass" : "FAIL");
    for (auto r : bad_initial_values) os << ' ' << r + 1;
    os << "\norders descending (informational): " << (orders_descending ? "yes" : "no") << '\n';
    return os.str();
}

} // namespace fracinv::core
