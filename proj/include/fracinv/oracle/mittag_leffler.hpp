#pragma once

namespace fracinv::oracle {

struct MLQuery {
    double order = 0.5;      // alpha in (0, 1]
    double argument = 0.0;   // z, |z| <= 50
    double tolerance = 1e-16;
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1)
/// for real z, 0 < alpha <= 1, |z| <= 50.
///
/// The power series is summed in MPFR at a working precision sized to the
/// largest term, so the cancellation of the alternating series for z < 0 does
/// not reach the result. Summation stops once past the largest term when three
/// consecutive terms fall below tolerance * |partial sum|.
///
/// For z < 0 with alpha < 1 and |z|^{1/alpha} > 60 the series would need
/// thousands of bits; there the algebraic expansion
///   E_alpha(z) = -sum_{k>=1} z^{-k} / Gamma(1 - alpha k)
/// is used instead. Its truncation error is of order exp(-|z|^{1/alpha}) < 1e-26.
///
/// Throws DomainError outside the supported range or on overflow (z > 0).
[[nodiscard]] double mittag_leffler(const MLQuery& query);

[[nodiscard]] inline double mittag_leffler(double order, double argument) {
    return mittag_leffler(MLQuery{order, argument});
}

} // namespace fracinv::oracle
