// Qualitative statements about the K = 2 cases, checked on the table protocol:
// alpha0 = (0.5, 0.5), default grids, 10 noise seeds.

#include "fracinv/experiments/report.hpp"
#include "fracinv/experiments/tables.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracinv::experiments;

namespace {

const TableOutput& table() {
    static const TableOutput t = [] {
        ReproduceOptions o;
        o.noise_levels = {0.0, 0.05};
        return reproduce_table("table1", o);
    }();
    return t;
}

const CellStats& cell(char label, double delta) {
    static const auto cells = cell_statistics(table().report);
    for (const auto& c : cells) {
        if (c.label == label && c.noise_level == delta) return c;
    }
    throw std::logic_error("missing cell");
}

} // namespace

TEST_CASE("observing u1 alone or both components gives the same orders on clean data") {
    const auto a = rows_for(table().report, 'A');
    const auto c = rows_for(table().report, 'C');
    REQUIRE(a.front().noise_level == 0.0);
    REQUIRE(c.front().noise_level == 0.0);
    INFO("A: " << a.front().result.label() << ", C: " << c.front().result.label());
    REQUIRE(a.front().result.converged());
    REQUIRE(c.front().result.converged());
    CHECK((a.front().result.orders - c.front().result.orders).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("observing u2 is less accurate than observing u1 under 5% noise") {
    const auto& a = cell('A', 0.05);
    const auto& b = cell('B', 0.05);
    INFO("median errors A = " << a.median_rel_err_pct.transpose() << ", B = " << b.median_rel_err_pct.transpose()
                              << " (converged " << a.converged << " and " << b.converged << " of 10)");
    REQUIRE(a.median_rel_err_pct.allFinite());
    for (Eigen::Index k = 0; k < 2; ++k) CHECK(b.median_rel_err_pct[k] >= a.median_rel_err_pct[k]);
}

TEST_CASE("observing u1 converges from most of the 45 initial guesses") {
    const auto report = run_sweep({paper_case('A'), 0.0});
    INFO("converged " << report.sweep->converged << " of 45");
    CHECK(report.sweep->converged >= 34);
    CHECK(report.sweep->converged <= 44);
    CHECK(report.sweep->min_iterations >= 1);
    CHECK(report.sweep->max_iterations <= 10);
}
