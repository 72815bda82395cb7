#include "fracinv/core/block_tridiagonal.hpp"
#include "fracinv/core/errors.hpp"
#include "fracinv/core/field_io.hpp"
#include "fracinv/core/forward_solver.hpp"
#include "fracinv/core/l1_weights.hpp"
#include "fracinv/core/observation.hpp"
#include "fracinv/core/uniqueness.hpp"
#include "fracinv/oracle/analytic.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace fracinv;
using namespace fracinv::core;

namespace {

Eigen::MatrixXd profile(std::size_t k, const SpatialGrid& g) {
    const Eigen::VectorXd q = sample_dirichlet(g, [](double x) { return 1.0 - 4.0 * (x - 0.5) * (x - 0.5); });
    Eigen::MatrixXd u0(static_cast<Eigen::Index>(k), q.size());
    for (Eigen::Index r = 0; r < u0.rows(); ++r) u0.row(r) = q.transpose();
    u0.row(0) *= 2.0;
    return u0;
}

SystemConfig two_component(double a1, double a2, std::size_t n = 50, std::size_t m = 40) {
    SpatialGrid g(1.0, m);
    Eigen::MatrixXd c(2, 2);
    c << -1.0, 1.0,
          1.0, -1.0;
    return SystemConfig(g, TimeGrid(1.0, n), Eigen::Vector2d(a1, a2), c, profile(2, g));
}

double max_abs(const SolutionField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("grids: nodes, spacing and snapping") {
    SpatialGrid g(2.0, 8);
    CHECK(g.spacing() == doctest::Approx(0.25));
    CHECK(g.nodes() == 9);
    CHECK(g.interior() == 7);
    CHECK(g.node(8) == 2.0);
    CHECK(g.snap(1.0) == 4);
    CHECK(g.snap(1.1) == 4);
    CHECK(g.snap(0.3) == 1);
    CHECK_THROWS_AS((void)g.snap(0.05), PlacementError);  // rounds to the boundary
    CHECK_THROWS_AS((void)g.snap(-0.1), PlacementError);
    CHECK_THROWS_AS((void)g.snap(2.0), PlacementError);
    CHECK_THROWS_AS(SpatialGrid(1.0, 1), ConfigError);
    CHECK_THROWS(SpatialGrid(-1.0, 10));

    TimeGrid t(1.0, 3);
    CHECK(t.node(3) == 1.0);
    CHECK(t.step() == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS(TimeGrid(1.0, 0));
}

TEST_CASE("L1 weights: closed forms and monotonicity") {
    const TimeGrid t(1.0, 100);
    for (double a : {0.1, 0.5, 0.9}) {
        const auto w = l1_weights(a, t);
        CHECK(w.coefficients.size() == 100);
        CHECK(w.coefficients[0] == 1.0);
        for (std::size_t j = 1; j < w.coefficients.size(); ++j) {
            CHECK(w.coefficients[j] < w.coefficients[j - 1]);
            CHECK(w.coefficients[j] > 0.0);
        }
        CHECK(w.scale == doctest::Approx(std::pow(0.01, -a) / std::tgamma(2.0 - a)));
    }
    CHECK(l1_weights(0.5, t).coefficients[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(l1_weights(0.9, t).coefficients[1] == doctest::Approx(0.0717735).epsilon(1e-6));
    CHECK(l1_weights(0.9, t).coefficients[1] == doctest::Approx(std::pow(2.0, 0.1) - 1.0).epsilon(1e-14));
    // Far tail: no cancellation, b_j ~ (1 - a) j^{-a}.
    const auto w = l1_weights(0.5, TimeGrid(1.0, 100000));
    CHECK(w.coefficients.back() == doctest::Approx(0.5 / std::sqrt(99999.0)).epsilon(1e-5));
    CHECK_THROWS_AS(l1_weights(0.0, t), DomainError);
    CHECK_THROWS_AS(l1_weights(1.0, t), DomainError);
}

TEST_CASE("system config validation") {
    auto cfg = two_component(0.9, 0.5);
    CHECK_NOTHROW(cfg.validate());
    CHECK_THROWS_AS(cfg.with_orders(Eigen::Vector2d(1.0, 0.5)), DomainError);
    CHECK_THROWS_AS(cfg.with_orders(Eigen::Vector2d(0.5, -0.1)), DomainError);
    auto bad = cfg;
    bad.initial(0, 0) = 0.1;
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.coupling.resize(3, 3);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.diffusion[1] = 0.0;
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.initial(1, 5) = std::nan("");
    CHECK_THROWS(bad.validate());
    // Unsorted orders are fine.
    CHECK_NOTHROW(two_component(0.3, 0.8).validate());
}

TEST_CASE("block tridiagonal solve matches a dense solve") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Eigen::Index b = 3;
    const std::size_t n = 6;
    std::vector<Eigen::MatrixXd> lower(n), diag(n), upper(n);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(b * n, b * n);
    auto random = [&] {
        Eigen::MatrixXd m(b, b);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
        return m;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<Eigen::Index>(i) * b;
        diag[i] = random() + 6.0 * Eigen::MatrixXd::Identity(b, b);
        lower[i] = random();
        upper[i] = random();
        dense.block(r, r, b, b) = diag[i];
        if (i > 0) dense.block(r, r - b, b, b) = lower[i];
        if (i + 1 < n) dense.block(r, r + b, b, b) = upper[i];
    }
    Eigen::VectorXd rhs(b * n);
    for (Eigen::Index i = 0; i < rhs.size(); ++i) rhs[i] = u(rng);
    const Eigen::VectorXd expected = dense.partialPivLu().solve(rhs);

    BlockTridiagonal sys(lower, diag, upper);
    Eigen::VectorXd x = rhs;
    sys.solve({x.data(), static_cast<std::size_t>(x.size())});
    CHECK((x - expected).norm() <= 1e-12 * expected.norm());
    CHECK(sys.min_pivot_rcond() > 0.0);

    diag[2].setZero();
    lower[2].setZero();
    CHECK_THROWS_AS(BlockTridiagonal(lower, diag, upper), SolverError);
}

TEST_CASE("forward: homogeneous data stays zero") {
    auto cfg = two_component(0.7, 0.4);
    cfg.initial.setZero();
    const auto f = solve_forward(cfg);
    CHECK(max_abs(f) == 0.0);

    const ForwardStepper stepper(cfg);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 39);
    CHECK(stepper.step(zero, zero).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forward: first slice is the initial value and boundaries stay zero") {
    const auto cfg = two_component(0.9, 0.5);
    const auto f = solve_forward(cfg);
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t m = 0; m < cfg.space.nodes(); ++m) {
            CHECK(f(k, 0, m) == cfg.initial(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)));
        }
        for (std::size_t i = 0; i <= cfg.time.steps(); ++i) {
            CHECK(f(k, i, 0) == 0.0);
            CHECK(f(k, i, cfg.space.intervals()) == 0.0);
        }
    }
}

TEST_CASE("forward: component swap symmetry") {
    SpatialGrid g(1.0, 60);
    Eigen::MatrixXd c(2, 2);
    c << -1.0, 0.5,
          0.5, -1.0;
    Eigen::MatrixXd u0 = profile(2, g);
    u0.row(0) = u0.row(1);
    const SystemConfig cfg(g, TimeGrid(1.0, 80), Eigen::Vector2d(0.7, 0.7), c, u0);
    const auto f = solve_forward(cfg);
    double diff = 0.0;
    for (std::size_t i = 0; i <= 80; ++i) {
        for (std::size_t m = 0; m <= 60; ++m) diff = std::max(diff, std::abs(f(0, i, m) - f(1, i, m)));
    }
    CHECK(diff <= 1e-12);
}

TEST_CASE("forward: relabelling components permutes the field") {
    const auto a = two_component(0.9, 0.5);
    Eigen::MatrixXd c = a.coupling;
    c(0, 1) = 0.3;  // make it asymmetric
    const SystemConfig one(a.space, a.time, a.orders, c, a.initial);
    Eigen::Matrix2d p;
    p << 0, 1,
         1, 0;
    const SystemConfig two(a.space, a.time, p * a.orders, p * c * p, p * a.initial);
    const auto f1 = solve_forward(one);
    const auto f2 = solve_forward(two);
    double diff = 0.0;
    for (std::size_t i = 0; i <= a.time.steps(); ++i) {
        for (std::size_t m = 0; m < a.space.nodes(); ++m) {
            diff = std::max(diff, std::abs(f1(0, i, m) - f2(1, i, m)));
            diff = std::max(diff, std::abs(f1(1, i, m) - f2(0, i, m)));
        }
    }
    CHECK(diff <= 1e-13);
}

TEST_CASE("forward: zero row sums decouple the component sum") {
    const auto cfg = two_component(0.6, 0.6, 100, 100);
    const auto f = solve_forward(cfg);
    const Eigen::MatrixXd w0 = cfg.initial.colwise().sum();
    const SystemConfig single(cfg.space, cfg.time, Eigen::VectorXd::Constant(1, 0.6),
                              Eigen::MatrixXd::Zero(1, 1), w0);
    const auto s = solve_forward(single);
    double diff = 0.0;
    for (std::size_t i = 0; i <= 100; ++i) {
        for (std::size_t m = 0; m <= 100; ++m) diff = std::max(diff, std::abs(f(0, i, m) + f(1, i, m) - s(0, i, m)));
    }
    CHECK(diff <= 1e-10);
}

TEST_CASE("forward: first step against the Mittag-Leffler solution") {
    // The exact solution behaves like t^alpha near 0, so the L1 error at t_1
    // scales like tau^alpha rather than tau.
    SpatialGrid g(1.0, 200);
    const Eigen::VectorXd u = sample_dirichlet(g, [](double x) { return std::sin(std::numbers::pi * x); });
    for (double a : {0.5, 0.9}) {
        double last = 1.0;
        for (std::size_t n : {100, 1000, 10000}) {
            const TimeGrid t(1.0, n);
            const SystemConfig cfg(g, t, Eigen::VectorXd::Constant(1, a), Eigen::MatrixXd::Zero(1, 1),
                                   u.transpose());
            const Eigen::MatrixXd prev = cfg.initial.block(0, 1, 1, 199);
            const Eigen::MatrixXd next = step_system(cfg, Eigen::MatrixXd::Zero(1, 199), prev);
            const double err = std::abs(next(0, 99) - oracle::analytic_single_component(a, 0.0, 1.0, 0.5, t.step()));
            CHECK(err <= 3.0 * std::pow(t.step(), a));
            CHECK(err < last);
            last = err;
        }
    }
}

TEST_CASE("forward: deterministic") {
    const auto cfg = two_component(0.8, 0.3);
    const auto a = solve_forward(cfg);
    const auto b = solve_forward(cfg);
    CHECK(a.values().size() == b.values().size());
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST_CASE("forward: growing system blows up with the step reported") {
    // c just below the L1 diagonal: amplification ~10 per step overflows.
    SpatialGrid g(1.0, 10);
    const SystemConfig cfg(g, TimeGrid(1.0, 400), Eigen::VectorXd::Constant(1, 0.9),
                           Eigen::MatrixXd::Constant(1, 1, 220.0), profile(1, g));
    try {
        (void)solve_forward(cfg);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& e) {
        CHECK(e.step() > 1);
        CHECK(e.step() <= 400);
        CHECK(std::string(e.what()).find("time step") != std::string::npos);
    }
}

TEST_CASE("observation: clean values, noise bound, determinism") {
    const auto cfg = two_component(0.9, 0.5);
    const auto f = solve_forward(cfg);
    const auto clean = observe(f, {0, 1}, 0.5);
    REQUIRE(clean.values.size() == 2);
    CHECK(clean.values[0].size() == 50);
    CHECK(clean.node == 20);
    for (std::size_t i = 1; i <= 50; ++i) CHECK(clean.values[1][i - 1] == f(1, i, 20));
    CHECK(clean.stacked().size() == 100);

    for (double delta : {0.01, 0.05}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
            const auto noisy = observe(f, {0, 1}, 0.5, delta, seed);
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t i = 0; i < 50; ++i) {
                    CHECK(std::abs(noisy.values[j][i] - clean.values[j][i]) <= delta * std::abs(clean.values[j][i]));
                }
            }
        }
    }
    const auto a = observe(f, {1}, 0.5, 0.05, 7);
    const auto b = observe(f, {1}, 0.5, 0.05, 7);
    const auto c = observe(f, {1}, 0.5, 0.05, 8);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.seed == 7u);

    CHECK_THROWS_AS(observe(f, {}, 0.5), ConfigError);
    CHECK_THROWS_AS(observe(f, {2}, 0.5), ConfigError);
    CHECK_THROWS_AS(observe(f, {0}, 0.01), PlacementError);  // snaps to the boundary
    CHECK_THROWS_AS(observe(f, {0}, 1.2), PlacementError);
    CHECK_THROWS(add_noise(clean, 1.0, 1));
    CHECK_THROWS(add_noise(clean, -0.1, 1));
    const auto dup = observe(f, {1, 0, 1}, 0.5);
    CHECK(dup.components == std::vector<std::size_t>{0, 1, 1});
    CHECK(dup.values[1] == dup.values[2]);
}

TEST_CASE("observation: uniform variate covers [-1, 1]") {
    CHECK(symmetric_unit(0) == -1.0);
    CHECK(symmetric_unit(~0ULL) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(symmetric_unit(~0ULL) <= 1.0);
    CHECK(symmetric_unit(1ULL << 63) == 0.0);
}

TEST_CASE("observation: subsampling a finer time grid") {
    const auto fine = solve_forward(two_component(0.9, 0.5, 200, 40));
    const auto coarse = solve_forward(two_component(0.9, 0.5, 50, 40));
    const auto s = subsample(observe(fine, {0}, 0.5), 4);
    CHECK(s.samples() == 50);
    CHECK(s.time.node(50) == 1.0);
    CHECK(s.values[0][49] == fine(0, 200, 20));
    // Same physics, so close to the coarse run.
    CHECK(s.values[0][49] == doctest::Approx(coarse(0, 50, 20)).epsilon(0.05));
    CHECK_THROWS(subsample(s, 3));
}

TEST_CASE("uniqueness conditions") {
    auto cfg = two_component(0.9, 0.5);
    auto r = validate_uniqueness_conditions(cfg);
    CHECK(r.passes());
    CHECK(r.orders_descending);

    cfg.coupling << -1.0, 0.0,
                     1.0, -1.0;
    r = validate_uniqueness_conditions(cfg);
    CHECK_FALSE(r.cooperative());
    REQUIRE(r.non_cooperative.size() == 1);
    CHECK(r.non_cooperative[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(r.dissipative());

    cfg.coupling << -0.5, 1.0,
                     1.0, -1.0;
    r = validate_uniqueness_conditions(cfg);
    CHECK(r.cooperative());
    CHECK(r.positive_row_sums == std::vector<std::size_t>{0});
    CHECK_FALSE(r.passes());
    CHECK_FALSE(r.describe().empty());

    auto swapped = two_component(0.5, 0.9);
    swapped.initial.row(1).setZero();
    r = validate_uniqueness_conditions(swapped);
    CHECK_FALSE(r.orders_descending);
    CHECK(r.bad_initial_values == std::vector<std::size_t>{1});
}

TEST_CASE("field CSV export") {
    const auto f = solve_forward(two_component(0.9, 0.5, 5, 4));
    const auto dir = std::filesystem::temp_directory_path() / "fracinv_field_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto paths = write_field_csv(f, dir, "u");
    REQUIRE(paths.size() == 2);
    std::ifstream in(paths[1]);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x0,x1,x2,x3,x4");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 6);
    // A regular file where a directory is expected.
    CHECK_THROWS_AS(write_field_csv(f, paths[0] / "nested"), IoError);
    std::filesystem::remove_all(dir);
}
