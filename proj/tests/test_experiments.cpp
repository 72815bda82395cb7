#include "fracinv/core/errors.hpp"
#include "fracinv/core/uniqueness.hpp"
#include "fracinv/experiments/config_io.hpp"
#include "fracinv/experiments/report.hpp"
#include "fracinv/experiments/tables.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace fracinv;
using namespace fracinv::experiments;

namespace {

const GridSpec kSmall{40, 40, 1.0, 1.0};

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("fracinv_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("presets: two components") {
    const auto s = paper_config_k2();
    CHECK(s.truth == Eigen::Vector2d(0.9, 0.5));
    CHECK(s.config.time.steps() == 100);
    CHECK(s.config.time.horizon() == 1.0);
    CHECK(s.config.space.length() == 1.0);
    CHECK(s.config.coupling.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK(core::validate_uniqueness_conditions(s.config).passes());
    const auto mid = s.config.space.snap(0.5);
    CHECK(s.config.initial(1, static_cast<Eigen::Index>(mid)) == 1.0);
    CHECK(s.config.initial(0, static_cast<Eigen::Index>(mid)) == 2.0);
    CHECK(s.config.initial(1, 0) == 0.0);
    CHECK(s.config.initial(1, s.config.initial.cols() - 1) == 0.0);
}

TEST_CASE("presets: three components") {
    const auto s = paper_config_k3();
    CHECK(s.truth == Eigen::Vector3d(0.9, 0.6, 0.5));
    CHECK(s.config.coupling.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.config.coupling.diagonal() == Eigen::Vector3d::Constant(-2.0));
    const auto r = core::validate_uniqueness_conditions(s.config);
    CHECK(r.cooperative());
    CHECK(r.dissipative());
    CHECK(r.passes());
    CHECK((s.config.initial.row(0) - 2.0 * s.config.initial.row(1)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.config.initial.row(1) == s.config.initial.row(2));
}

TEST_CASE("cases: observed sets and validation") {
    CHECK(paper_observed('A') == std::vector<std::size_t>{0});
    CHECK(paper_observed('B') == std::vector<std::size_t>{1});
    CHECK(paper_observed('C') == std::vector<std::size_t>{0, 1});
    CHECK(paper_observed('D') == std::vector<std::size_t>{2});
    CHECK(paper_observed('E') == std::vector<std::size_t>{1, 2});
    CHECK(paper_observed('F') == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(paper_observed('G'), ConfigError);

    auto spec = paper_case('A', kSmall);
    spec.initial_guesses = {Eigen::Vector2d(0.5, 0.5)};
    CHECK_NOTHROW(spec.validate());
    spec.noise_levels = {1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.noise_levels = {0.0};
    spec.initial_guesses = {Eigen::Vector2d(0.0, 0.5)};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.initial_guesses = {Eigen::Vector3d(0.5, 0.5, 0.5)};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.initial_guesses = {};
    spec.observed = {3};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.observed = {0};
    spec.data_grid = GridSpec{60, 40, 1.0, 1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("cases: residual is highly overdetermined") {
    for (char label : {'A', 'B', 'C', 'D', 'E', 'F'}) {
        const auto spec = paper_case(label);
        CHECK(paper_observed(label).size() * spec.inversion_grid.time_steps >= 100);
        CHECK(spec.components() <= 3);
    }
}

TEST_CASE("cases: initial-guess grids") {
    const auto g2 = initial_guess_grid(2);
    const auto g3 = initial_guess_grid(3);
    CHECK(g2.size() == 45);
    CHECK(g3.size() == 165);
    std::set<std::pair<int, int>> seen;
    for (const auto& g : g2) {
        CHECK(g[0] >= g[1]);
        CHECK(g.minCoeff() >= 0.1 - 1e-12);
        CHECK(g.maxCoeff() <= 0.9 + 1e-12);
        seen.insert({static_cast<int>(std::lround(g[0] * 10)), static_cast<int>(std::lround(g[1] * 10))});
    }
    CHECK(seen.size() == 45);
    for (const auto& g : g3) CHECK((g[0] >= g[1] && g[1] >= g[2]));
    CHECK_THROWS_AS(initial_guess_grid(4), ConfigError);
}

TEST_CASE("cases: noise seeds depend only on their inputs") {
    CHECK(noise_seed(1, 'A', 0, 0) == noise_seed(1, 'A', 0, 0));
    std::set<std::uint64_t> seeds;
    for (char label : {'A', 'B'}) {
        for (std::size_t d = 0; d < 3; ++d) {
            for (std::size_t t = 0; t < 10; ++t) seeds.insert(noise_seed(7, label, d, t));
        }
    }
    CHECK(seeds.size() == 60);
    CHECK(noise_seed(7, 'A', 1, 1) != noise_seed(8, 'A', 1, 1));
}

TEST_CASE("run_case: row layout, seeds and statistics") {
    auto spec = paper_case('C', kSmall);
    spec.noise_levels = {0.0, 0.05};
    spec.trials = 3;
    spec.initial_guesses = {Eigen::Vector2d(0.8, 0.4), Eigen::Vector2d(0.6, 0.6)};
    const auto report = run_case(spec);
    REQUIRE(report.rows.size() == 2 + 3 * 2);
    CHECK_FALSE(report.rows[0].seed);
    CHECK(report.rows[2].seed == noise_seed(spec.seed_base, 'C', 1, 0));
    CHECK(report.rows[2].seed == report.rows[3].seed);
    CHECK(report.rows[4].trial == 1);
    for (const auto& r : report.rows) CHECK(r.result.converged());
    CHECK(report.rows[0].result.relative_errors_pct->maxCoeff() <= 1e-4);

    const auto cells = cell_statistics(report);
    CHECK(cells.size() == 4);
    for (const auto& c : cells) CHECK(c.runs == (c.noise_level > 0.0 ? 3u : 1u));

    // Threads do not change results.
    spec.threads = 3;
    CHECK(runs_csv(run_case(spec)) == runs_csv(report));
}

TEST_CASE("run_case: finer data grid removes the inverse crime") {
    auto spec = paper_case('C', kSmall);
    spec.noise_levels = {0.0};
    spec.initial_guesses = {Eigen::Vector2d(0.9, 0.5)};
    spec.data_grid = GridSpec{160, 160, 1.0, 1.0};
    const auto report = run_case(spec);
    REQUIRE(report.rows.size() == 1);
    const auto& res = report.rows[0].result;
    REQUIRE(res.converged());
    // Discretization error now enters the data, so the truth is no longer exact.
    CHECK(res.relative_errors_pct->maxCoeff() > 1e-3);
}

TEST_CASE("report: diverged runs count as infinite error") {
    ExperimentReport report;
    for (int i = 0; i < 3; ++i) {
        RunRow row;
        row.label = 'A';
        row.noise_level = 0.05;
        row.trial = static_cast<std::size_t>(i);
        row.initial = Eigen::Vector2d(0.5, 0.5);
        row.result.orders = Eigen::Vector2d(0.9, 0.5);
        if (i < 2) {
            row.result.status = inverse::Status::diverged;
            row.result.reason = inverse::DivergenceReason::left_domain;
        } else {
            row.result.status = inverse::Status::converged;
            row.result.relative_errors_pct = Eigen::Vector2d(0.1, 0.2);
        }
        report.rows.push_back(row);
    }
    const auto cells = cell_statistics(report);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].converged == 1);
    CHECK(std::isinf(cells[0].median_rel_err_pct[0]));

    const auto csv = runs_csv(report);
    CHECK(csv.rfind("case,delta,alpha0_1,alpha0_2,alpha_star_1,alpha_star_2,rel_err_pct_1,rel_err_pct_2,status,iterations,seed\n", 0) == 0);
    CHECK(csv.find("A,0.050000,0.500000,0.500000,,,,,diverged:left-domain") != std::string::npos);
    CHECK(csv.find("0.900000,0.500000,0.100000,0.200000,converged") != std::string::npos);
}

TEST_CASE("report: emit refuses an empty report and writes CSV and JSON") {
    const auto dir = scratch("emit");
    CHECK_THROWS_AS(emit_report({}, dir, "empty"), ConfigError);

    auto spec = paper_case('A', kSmall);
    spec.initial_guesses = {Eigen::Vector2d(0.9, 0.5)};
    CHECK_THROWS_AS(run_case(spec), ConfigError);  // no noise levels
    spec.noise_levels = {0.0};
    const auto report = run_case(spec);
    const auto files = emit_report(report, dir, "one");
    REQUIRE(files.size() == 2);
    CHECK(count_lines(slurp(files[0])) == 2);
    const auto j = nlohmann::json::parse(slurp(files[1]));
    CHECK(j["runs"] == 1);
    CHECK(j["converged"] == 1);
    CHECK(j["diverged"] == 0);

    std::ofstream(dir / "blocker") << "x";
    CHECK_THROWS_AS(emit_report(report, dir / "blocker", "x"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("reproduce: table shape and byte-identical reruns") {
    ReproduceOptions o;
    o.grid = kSmall;
    o.trials = 2;
    const auto a = reproduce_table("table2", o);
    const auto b = reproduce_table("table2", o);
    CHECK(runs_csv(a.report) == runs_csv(b.report));
    CHECK(a.table_csv == b.table_csv);
    // 3 case rows x 3 delta columns, each cell a K-vector.
    std::istringstream rows(a.table_csv);
    std::string line;
    std::getline(rows, line);
    CHECK(line == "case,delta_0.000000,delta_0.010000,delta_0.050000");
    std::size_t pairs = 0, n = 0;
    while (std::getline(rows, line)) {
        ++n;
        pairs += static_cast<std::size_t>(std::count(line.begin(), line.end(), '('));
    }
    CHECK(n == 3);
    CHECK(pairs == 9);
    CHECK(a.report.rows.size() == 3 * (1 + 2 + 2));

    o.seed += 1;
    CHECK(runs_csv(reproduce_table("table2", o).report) != runs_csv(a.report));
    CHECK_THROWS_AS(reproduce_table("table9", o), ConfigError);

    const auto dir = scratch("tables");
    const auto files = write_table(a, dir);
    CHECK(files.size() == 3);
    CHECK(slurp(dir / "table2.csv") == a.table_csv);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep: counts partition the grid") {
    auto spec = paper_case('C', kSmall);
    CHECK_THROWS_AS(run_case(spec), ConfigError);  // no guesses
    const auto report = run_sweep({spec, 0.0});
    REQUIRE(report.sweep);
    CHECK(report.sweep->converged + report.sweep->diverged == 45);
    CHECK(report.rows.size() == 45);
    if (report.sweep->converged > 0) {
        CHECK(report.sweep->min_iterations >= 1);
        CHECK(report.sweep->max_iterations >= report.sweep->min_iterations);
    }
}

TEST_CASE("sweep: single observed component of three") {
    // Only u_3 observed: convergence from a minority of the 165 guesses.
    const auto report = run_sweep({paper_case('D'), 0.0});
    CHECK(report.sweep->converged + report.sweep->diverged == 165);
    CHECK(report.sweep->converged >= 20);
    CHECK(report.sweep->converged <= 45);
    CHECK(report.sweep->max_iterations <= 10);
}

TEST_CASE("config: parsing and defaults") {
    const auto cfg = parse_config(nlohmann::json::parse(R"({"K": 2, "alpha_true": [0.9, 0.5]})"));
    CHECK(cfg.grid.time_steps == 100);
    CHECK(cfg.observed == std::vector<std::size_t>{0, 1});
    CHECK(cfg.noise_levels == std::vector<double>{0.0});
    CHECK(cfg.initial_guesses.size() == 1);
    CHECK(cfg.coupling == paper_config_k2().config.coupling);

    const auto full = parse_config(nlohmann::json::parse(R"({
        "K": 3, "alpha_true": [0.9, 0.6, 0.5], "C": [[-2,1,1],[1,-2,1],[1,1,-2]],
        "N": 50, "M": 60, "L": 2.0, "T": 0.5, "x0": 1.0, "observed_components": [3],
        "delta": [0, 0.01], "alpha0": [[0.5,0.5,0.5],[0.7,0.3,0.2]],
        "tol": 1e-8, "fd_step": 1e-7, "max_iters": 20})"));
    CHECK(full.components == 3);
    CHECK(full.observed == std::vector<std::size_t>{2});
    CHECK(full.noise_levels.size() == 2);
    CHECK(full.initial_guesses.size() == 2);
    CHECK(full.settings.max_iterations == 20);
    CHECK(full.grid.length == 2.0);
    CHECK(full.case_spec().inversion_grid.time_steps == 50);

    const auto scalar_delta = parse_config(nlohmann::json::parse(R"({"K": 2, "delta": 0.05, "alpha0": [0.7, 0.3]})"));
    CHECK(scalar_delta.noise_levels == std::vector<double>{0.05});
    CHECK_THROWS_AS(scalar_delta.true_orders(), ConfigError);
}

TEST_CASE("config: rejections") {
    auto bad = [](const char* text) { return parse_config(nlohmann::json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"K": 2, "extra": 1})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"alpha_true": [0.9, 0.5]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "alpha_true": [0.9]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "alpha_true": [1.5, 0.5]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 4})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "observed_components": [0]})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "x0": 0.001})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "delta": 1.0})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "N": -3})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"K": 2, "tol": 0})"), ConfigError);
    CHECK_THROWS_AS(bad(R"([1, 2])"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("config: data CSV round trip") {
    const auto cfg = parse_config(nlohmann::json::parse(R"({"K": 2, "alpha_true": [0.9, 0.5], "N": 20, "M": 20})"));
    auto spec = cfg.case_spec();
    const auto clean = generate_clean_data(spec);
    const auto dir = scratch("data");
    std::filesystem::create_directories(dir);
    const auto path = dir / "data.csv";
    write_text(path, data_csv(clean));
    CHECK(slurp(path).rfind("t,g_1,g_2\n", 0) == 0);
    const auto back = read_data_csv(path, cfg.system().time, cfg.x0);
    CHECK(back.components == clean.components);
    CHECK(back.values == clean.values);

    write_text(path, "t,g_1\n0.05,1\n");
    CHECK_THROWS_AS(read_data_csv(path, cfg.system().time, 0.5), ConfigError);
    write_text(path, "t,u_1\n");
    CHECK_THROWS_AS(read_data_csv(path, cfg.system().time, 0.5), ConfigError);
    write_text(path, "t,g_2,g_1\n");
    CHECK_THROWS_AS(read_data_csv(path, cfg.system().time, 0.5), ConfigError);
    std::filesystem::remove_all(dir);
}
