#include "fracinv/oracle/mittag_leffler.hpp"

#include "fracinv/core/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fracinv::oracle {

namespace {

constexpr double kMaxArgument = 50.0;
constexpr double kAsymptoticThreshold = 60.0;

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;

    mpfr_ptr get() noexcept { return v_; }

private:
    mpfr_t v_;
};

// log of the largest series term magnitude, max_k (k ln|z| - ln Gamma(alpha k + 1)),
// and the index where it is attained.
std::pair<double, long> peak_term(double order, double abs_z) {
    const double lz = std::log(abs_z);
    double best = 0.0;
    long best_k = 0;
    for (long k = 1;; ++k) {
        const double v = static_cast<double>(k) * lz - std::lgamma(order * static_cast<double>(k) + 1.0);
        if (v > best) {
            best = v;
            best_k = k;
        } else if (k > best_k + 8 && v < best - 40.0) {
            break;
        }
    }
    return {best, best_k};
}

double series(double order, double z, double tolerance) {
    const double abs_z = std::abs(z);
    const auto [peak_log, peak_k] = peak_term(order, abs_z);
    const double digits_lost = z < 0.0 ? peak_log / std::numbers::ln2 : 0.0;
    const auto bits = static_cast<mpfr_prec_t>(96.0 + std::ceil(digits_lost));

    MpfrValue sum(bits), power(bits), term(bits), arg(bits), zz(bits), gamma(bits);
    mpfr_set_ui(sum.get(), 1, MPFR_RNDN);
    mpfr_set_ui(power.get(), 1, MPFR_RNDN);
    mpfr_set_d(zz.get(), z, MPFR_RNDN);

    int small_run = 0;
    for (long k = 1; k < 1'000'000; ++k) {
        mpfr_mul(power.get(), power.get(), zz.get(), MPFR_RNDN);
        mpfr_set_d(arg.get(), order, MPFR_RNDN);
        mpfr_mul_si(arg.get(), arg.get(), k, MPFR_RNDN);
        mpfr_add_ui(arg.get(), arg.get(), 1, MPFR_RNDN);
        mpfr_gamma(gamma.get(), arg.get(), MPFR_RNDN);
        mpfr_div(term.get(), power.get(), gamma.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);

        const double t = std::abs(mpfr_get_d(term.get(), MPFR_RNDN));
        const double s = std::abs(mpfr_get_d(sum.get(), MPFR_RNDN));
        if (k > peak_k && t <= tolerance * s) {
            if (++small_run == 3) break;
        } else {
            small_run = 0;
        }
    }
    const double result = mpfr_get_d(sum.get(), MPFR_RNDN);
    if (!std::isfinite(result)) {
        throw DomainError("Mittag-Leffler value overflows double precision");
    }
    return result;
}

// E_alpha(-x) ~ -sum_{k>=1} (-x)^{-k} / Gamma(1 - alpha k), with
// 1/Gamma(1 - y) = Gamma(y) sin(pi y) / pi.
double algebraic_expansion(double order, double x) {
    const double lx = std::log(x);
    double sum = 0.0;
    double previous = INFINITY;
    int small_run = 0;
    for (long k = 1; k < 100'000; ++k) {
        const double y = order * static_cast<double>(k);
        const double magnitude = std::exp(std::lgamma(y) - static_cast<double>(k) * lx);
        if (magnitude > previous) break; // past the smallest term
        previous = magnitude;
        const double sign = (k % 2 == 0) ? -1.0 : 1.0;
        const double term = sign * magnitude * std::sin(std::numbers::pi * y) / std::numbers::pi;
        sum += term;
        if (magnitude <= 1e-18 * std::abs(sum)) {
            if (++small_run == 3) break;
        } else {
            small_run = 0;
        }
    }
    return sum;
}

} // namespace

double mittag_leffler(const MLQuery& q) {
    if (!(q.order > 0.0 && q.order <= 1.0)) {
        throw DomainError("Mittag-Leffler order " + std::to_string(q.order) + " outside (0, 1]");
    }
    if (!std::isfinite(q.argument) || std::abs(q.argument) > kMaxArgument) {
        throw DomainError("Mittag-Leffler argument " + std::to_string(q.argument) +
                          " outside [-50, 50]");
    }
    if (!(q.tolerance > 0.0)) throw DomainError("Mittag-Leffler tolerance must be positive");
    if (q.argument == 0.0) return 1.0;

    if (q.argument < 0.0 && q.order < 1.0) {
        const double x = -q.argument;
        if (std::pow(x, 1.0 / q.order) > kAsymptoticThreshold) {
            return algebraic_expansion(q.order, x);
        }
    }
    return series(q.order, q.argument, q.tolerance);
}

} // namespace fracinv::oracle
