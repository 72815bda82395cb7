// Command-line front end: forward solves, single inversions, table reproduction,
// sweeps and oracle validation.

#include "fracinv/core/errors.hpp"
#include "fracinv/core/field_io.hpp"
#include "fracinv/core/forward_solver.hpp"
#include "fracinv/experiments/acceptance.hpp"
#include "fracinv/experiments/config_io.hpp"
#include "fracinv/experiments/report.hpp"
#include "fracinv/oracle/analytic.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
namespace ex = fracinv::experiments;

namespace {

enum Exit { ok = 0, config_error = 2, numerical_failure = 3, check_failure = 4 };

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    std::vector<double> delta;
    std::size_t threads = 1;
    bool fine_data = false;
};

ex::ExperimentConfig load(const Common& c) {
    if (c.config.empty()) throw fracinv::ConfigError("--config is required");
    auto cfg = ex::load_config(c.config);
    if (!c.delta.empty()) cfg.noise_levels = c.delta;
    return cfg;
}

void print_files(const std::vector<fs::path>& files) {
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

int run_forward(const Common& c) {
    const auto cfg = load(c);
    const auto field = fracinv::core::solve_forward(cfg.system());
    fs::create_directories(c.out);
    print_files(fracinv::core::write_field_csv(field, c.out, "field"));
    const double delta = cfg.noise_levels.front();
    const auto data = fracinv::core::observe(field, cfg.observed, cfg.x0, delta, c.seed.value_or(20240101));
    const fs::path path = fs::path(c.out) / "data.csv";
    ex::write_text(path, ex::data_csv(data));
    std::cout << "wrote " << path.string() << '\n';
    return ok;
}

int run_invert(const Common& c, const std::string& data_path) {
    const auto cfg = load(c);
    const auto base = cfg.system();
    const auto data = ex::read_data_csv(data_path, base.time, cfg.x0);
    const fracinv::inverse::InverseProblem problem(base, data);

    ex::ExperimentReport report;
    bool any = false;
    for (const auto& guess : cfg.initial_guesses) {
        ex::RunRow row;
        row.label = 'X';
        row.initial = guess;
        row.result = fracinv::inverse::reconstruct(guess, problem, cfg.settings, cfg.truth);
        std::cout << "alpha0 = " << guess.transpose() << " -> " << row.result.label();
        if (row.result.converged()) {
            std::cout << " alpha* = " << row.result.orders.transpose() << " in " << row.result.iterations
                      << " iterations, |r| = " << row.result.residual_norms.back();
            any = true;
        }
        std::cout << '\n';
        report.rows.push_back(std::move(row));
    }
    print_files(ex::emit_report(report, c.out, "invert"));
    return any ? ok : numerical_failure;
}

int run_reproduce(const Common& c, const std::string& table, bool check) {
    ex::ReproduceOptions opts;
    if (c.seed) opts.seed = *c.seed;
    if (!c.delta.empty()) opts.noise_levels = c.delta;
    opts.threads = c.threads;
    opts.fine_data = c.fine_data;
    const auto out = ex::reproduce_table(table, opts);
    print_files(ex::write_table(out, c.out));
    std::cout << out.table_csv;
    if (!check) return ok;

    std::vector<ex::CriterionResult> results;
    if (table == "table1" || table == "table2") results.push_back(ex::check_accuracy_table(3, out));
    if (table == "table3") results.push_back(ex::check_accuracy_table(4, out));
    if (table == "table4") {
        results.push_back(ex::check_k2_sweep(out));
        results.push_back(ex::check_divergence_concentration(out));
    }
    if (table == "table5") results.push_back(ex::check_k3_sweep(out));
    bool passed = true;
    for (const auto& r : results) {
        std::cout << ex::format(r) << '\n';
        passed = passed && r.passed;
    }
    return passed ? ok : check_failure;
}

int run_sweep(const Common& c) {
    const auto cfg = load(c);
    ex::SweepSpec spec{cfg.case_spec(), cfg.noise_levels.front()};
    if (c.seed) spec.base.seed_base = *c.seed;
    spec.base.threads = c.threads;
    const auto report = ex::run_sweep(spec);
    const auto& s = *report.sweep;
    std::cout << "converged " << s.converged << ", diverged " << s.diverged << ", iterations "
              << s.min_iterations << "-" << s.max_iterations << '\n';
    print_files(ex::emit_report(report, c.out, "sweep"));
    return ok;
}

int run_validate(const Common& c) {
    std::ostringstream csv;
    csv << "alpha,N,M,numerical,exact,abs_error,rel_error,ratio\n";
    csv.precision(10);
    for (double order : {0.5, 0.9}) {
        for (const auto& r : fracinv::oracle::convergence_study(order, {{50, 50}, {100, 100}, {200, 200}})) {
            csv << order << ',' << r.time_steps << ',' << r.intervals << ',' << r.numerical << ','
                << r.exact << ',' << r.abs_error << ',' << r.rel_error << ',' << r.ratio << '\n';
        }
    }
    std::cout << csv.str();
    fs::create_directories(c.out);
    ex::write_text(fs::path(c.out) / "convergence.csv", csv.str());

    bool passed = true;
    for (const auto& r : {ex::check_forward_oracle(), ex::check_symmetry_decoupling(),
                          ex::check_gradient_identity()}) {
        std::cout << ex::format(r) << '\n';
        passed = passed && r.passed;
    }
    return passed ? ok : check_failure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled time-fractional diffusion: forward solver and order reconstruction"};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "experiment JSON file");
        sub->add_option("--seed", common.seed, "noise seed base");
        sub->add_option("--out", common.out, "output directory");
        sub->add_option("--delta", common.delta, "noise levels, comma separated")->delimiter(',');
        sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--fine-data", common.fine_data, "generate data on a 4x finer grid");
    };

    auto* forward = app.add_subcommand("forward", "solve the forward system and write field and data CSVs");
    add_common(forward);
    std::string data_path;
    auto* invert = app.add_subcommand("invert", "reconstruct the orders from a data CSV");
    add_common(invert);
    invert->add_option("--data", data_path, "CSV with header t,g_<k>")->required();
    std::string table;
    bool check = false;
    auto* reproduce = app.add_subcommand("reproduce", "rerun one of the published tables");
    add_common(reproduce);
    reproduce->add_option("table", table)->required()->check(
        CLI::IsMember({"table1", "table2", "table3", "table4", "table5"}));
    reproduce->add_flag("--check", check, "evaluate the acceptance thresholds");
    auto* sweep = app.add_subcommand("sweep", "initial-guess sweep for a config");
    add_common(sweep);
    auto* validate = app.add_subcommand("validate", "oracle and convergence studies");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*forward) return run_forward(common);
        if (*invert) return run_invert(common, data_path);
        if (*reproduce) return run_reproduce(common, table, check);
        if (*sweep) return run_sweep(common);
        if (*validate) return run_validate(common);
    } catch (const fracinv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const fracinv::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return config_error;
    } catch (const fracinv::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return config_error;
    }
    return ok;
}
