#include "fracinv/core/l1_weights.hpp"

#include "fracinv/core/errors.hpp"

#include <cmath>
#include <string>

namespace fracinv::core {

L1Weights l1_weights(double order, const TimeGrid& time) {
    if (!(order > 0.0 && order < 1.0)) {
        throw DomainError("fractional order " + std::to_string(order) + " outside (0, 1)");
    }
    const std::size_t n = time.steps();
    if (n < 1) throw ConfigError("time grid needs at least one step");

    L1Weights w;
    w.order = order;
    w.coefficients.resize(n);
    const double p = 1.0 - order;
    w.coefficients[0] = 1.0;
    // (j+1)^p - j^p = j^p * expm1(p * log1p(1/j)), free of cancellation for large j.
    for (std::size_t j = 1; j < n; ++j) {
        const double jd = static_cast<double>(j);
        w.coefficients[j] = std::pow(jd, p) * std::expm1(p * std::log1p(1.0 / jd));
    }
    w.scale = std::pow(time.step(), -order) / std::tgamma(2.0 - order);
    return w;
}

} // namespace fracinv::core
