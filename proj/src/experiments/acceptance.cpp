#include "fracinv/experiments/acceptance.hpp"

#include "fracinv/core/forward_solver.hpp"
#include "fracinv/experiments/report.hpp"
#include "fracinv/oracle/analytic.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace fracinv::experiments {

namespace {

std::string pct(double v) { return fixed6(v) + "%"; }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

std::string format(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail;
    return os.str();
}

CriterionResult check_forward_oracle() {
    CriterionResult res{1, "forward solver vs Mittag-Leffler oracle", true, ""};
    std::ostringstream os;
    for (double order : {0.5, 0.9}) {
        const auto rows = oracle::convergence_study(order, {{50, 50}, {100, 100}, {200, 200}});
        bool monotone = true;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            monotone = monotone && rows[i].abs_error < rows[i - 1].abs_error;
        }
        const double finest = rows.back().rel_error;
        res.passed = res.passed && monotone && finest <= kOracleRelError;
        os << "alpha=" << order << " rel.err(200,200)=" << finest
           << (monotone ? " monotone" : " NOT monotone") << "; ";
    }
    res.detail = os.str();
    return res;
}

CriterionResult check_symmetry_decoupling() {
    CriterionResult res{2, "symmetry and decoupling oracles", true, ""};
    const GridSpec grid;

    Eigen::MatrixXd c(2, 2);
    c << -1.0, 0.5,
          0.5, -1.0;
    PaperSetup sym = make_setup(Eigen::Vector2d(0.7, 0.7), c, grid);
    sym.config.initial.row(0) = sym.config.initial.row(1);
    const auto f = core::solve_forward(sym.config);
    double swap = 0.0;
    for (std::size_t i = 0; i <= f.time().steps(); ++i) {
        swap = std::max(swap, max_abs_diff(f.slice(0, i), f.slice(1, i)));
    }

    const double order = 0.6;
    Eigen::MatrixXd zero_rows(2, 2);
    zero_rows << -1.0, 1.0,
                  1.0, -1.0;
    // Initial values (2q, q): the sum starts from 3q.
    const PaperSetup coupled = make_setup(Eigen::Vector2d(order, order), zero_rows, grid);
    const auto fc = core::solve_forward(coupled.config);
    const Eigen::MatrixXd w0 = coupled.config.initial.colwise().sum();
    const core::SystemConfig single(coupled.config.space, coupled.config.time,
                                    Eigen::VectorXd::Constant(1, order),
                                    Eigen::MatrixXd::Zero(1, 1), w0);
    const auto fs = core::solve_forward(single);
    double decouple = 0.0;
    for (std::size_t i = 0; i <= fc.time().steps(); ++i) {
        for (std::size_t m = 0; m < fc.space().nodes(); ++m) {
            decouple = std::max(decouple, std::abs(fc(0, i, m) + fc(1, i, m) - fs(0, i, m)));
        }
    }
    res.passed = swap <= kSymmetryTol && decouple <= kDecouplingTol;
    std::ostringstream os;
    os << "swap max diff=" << swap << " (tol 1e-12), sum vs single max diff=" << decouple
       << " (tol 1e-10)";
    res.detail = os.str();
    return res;
}

CriterionResult check_accuracy_table(int id, const TableOutput& table) {
    CriterionResult res{id, "accuracy of the " + table.name + " runs", true, ""};
    std::ostringstream os;
    for (const auto& cell : cell_statistics(table.report)) {
        const bool noiseless = cell.noise_level == 0.0;
        if (!noiseless && std::abs(cell.noise_level - 0.05) > 1e-12) continue;
        const double bound = noiseless ? kNoiselessRelErrPct : kNoisyMedianRelErrPct;
        const double worst = cell.median_rel_err_pct.maxCoeff();
        bool ok = worst <= bound;
        std::size_t max_it = 0;
        for (const auto& r : table.report.rows) {
            if (r.label == cell.label && r.noise_level == cell.noise_level && r.result.converged()) {
                max_it = std::max(max_it, r.result.iterations);
            }
        }
        ok = ok && max_it <= kMaxIterations && cell.converged > 0;
        res.passed = res.passed && ok;
        os << cell.label << "@" << fixed6(cell.noise_level) << ": "
           << (ok ? "ok" : "FAIL") << " median err max=" << pct(worst) << " (<= " << bound
           << "%), converged " << cell.converged << "/" << cell.runs << ", max it " << max_it << "; ";
    }
    res.detail = os.str();
    return res;
}

namespace {

// Convergent runs must take <= 10 iterations and land within 0.5% of truth.
bool sweep_quality(const std::vector<RunRow>& rows, std::ostringstream& os) {
    std::size_t slow = 0, off = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
        if (!r.result.converged()) continue;
        if (r.result.iterations > kMaxIterations) ++slow;
        if (r.result.relative_errors_pct) {
            const double e = r.result.relative_errors_pct->maxCoeff();
            if (e > kSweepRelErrPct) ++off;
            worst = std::max(worst, e);
        }
    }
    if (slow || off) {
        os << rows.front().label << ": " << off << " convergent runs beyond 0.5% (worst " << pct(worst) << "), "
           << slow << " beyond 10 iterations; ";
    }
    return slow == 0 && off == 0;
}

} // namespace

CriterionResult check_k2_sweep(const TableOutput& table4) {
    CriterionResult res{5, "K=2 initial-guess sweep", true, ""};
    std::ostringstream os;
    const std::pair<char, std::size_t> needs[] = {{'A', 30}, {'B', 28}, {'C', 30}};
    for (const auto& [label, minimum] : needs) {
        const auto rows = rows_for(table4.report, label);
        const auto s = summarize(rows);
        const bool ok = s.converged >= minimum && rows.size() == 45 && sweep_quality(rows, os);
        res.passed = res.passed && ok;
        os << label << ": " << s.converged << "/45 converged (need >= " << minimum
           << "), iterations " << s.min_iterations << "-" << s.max_iterations << "; ";
    }
    res.detail = os.str();
    return res;
}

CriterionResult check_k3_sweep(const TableOutput& table5) {
    CriterionResult res{6, "K=3 initial-guess sweep", true, ""};
    std::ostringstream os;
    const auto d = summarize(rows_for(table5.report, 'D'));
    const auto e = summarize(rows_for(table5.report, 'E'));
    const auto f = summarize(rows_for(table5.report, 'F'));
    bool quality = true;
    for (char label : {'D', 'E', 'F'}) {
        const auto rows = rows_for(table5.report, label);
        quality = sweep_quality(rows, os) && quality && rows.size() == 165;
    }
    res.passed = quality && d.converged < e.converged && d.converged < f.converged;
    os << "converged D=" << d.converged << " E=" << e.converged << " F=" << f.converged
       << " of 165 (need D < E and D < F); iterations D " << d.min_iterations << "-"
       << d.max_iterations << ", E " << e.min_iterations << "-" << e.max_iterations << ", F "
       << f.min_iterations << "-" << f.max_iterations;
    res.detail = os.str();
    return res;
}

CriterionResult check_gradient_identity() {
    CriterionResult res{7, "gradient identity J^T r vs finite-difference grad Phi", true, ""};
    const PaperSetup setup = paper_config_k2();
    const auto field = core::solve_forward(setup.config);
    const inverse::InverseProblem problem(setup.config, core::observe(field, {0, 1}, 0.5));
    auto phi = [&](const Eigen::VectorXd& a) { return 0.5 * inverse::residual(a, problem).squaredNorm(); };

    std::mt19937_64 rng(7);
    double worst = 0.0;
    constexpr double h = 1e-5;
    for (int p = 0; p < 5; ++p) {
        Eigen::VectorXd a(2);
        for (Eigen::Index k = 0; k < 2; ++k) a[k] = 0.2 + 0.75 * (0.5 * (core::symmetric_unit(rng()) + 1.0));
        const auto jac = inverse::jacobian_fd(a, problem, 1e-6);
        const Eigen::VectorXd grad = jac.jacobian.transpose() * jac.residual;
        for (Eigen::Index k = 0; k < 2; ++k) {
            Eigen::VectorXd up = a, down = a;
            up[k] += h;
            down[k] -= h;
            const double fd = (phi(up) - phi(down)) / (2.0 * h);
            worst = std::max(worst, std::abs(grad[k] - fd) / std::abs(fd));
        }
    }
    res.passed = worst <= kGradientRelTol;
    std::ostringstream os;
    os << "worst per-component relative difference over 5 points = " << worst << " (tol 1e-3)";
    res.detail = os.str();
    return res;
}

CriterionResult check_divergence_concentration(const TableOutput& table4) {
    CriterionResult res{8, "divergence concentrated at alpha0_1 <= 0.4 (Case A)", true, ""};
    std::size_t diverged = 0, low = 0;
    for (const auto& r : rows_for(table4.report, 'A')) {
        if (r.result.converged()) continue;
        ++diverged;
        if (r.initial[0] <= 0.4 + 1e-12) ++low;
    }
    const double share = diverged ? static_cast<double>(low) / static_cast<double>(diverged) : 1.0;
    res.passed = share >= kDivergenceConcentration;
    std::ostringstream os;
    os << low << " of " << diverged << " divergent guesses have alpha0_1 <= 0.4 (share "
       << share << ", need >= 0.7)";
    res.detail = os.str();
    return res;
}

CriterionResult check_determinism_noise(const ReproduceOptions& options) {
    CriterionResult res{9, "seeded determinism and noise bound", true, ""};
    ReproduceOptions o = options;
    o.noise_levels = {0.0, 0.01, 0.05};
    o.trials = 2;
    const auto first = runs_csv(reproduce_table("table2", o).report);
    const auto second = runs_csv(reproduce_table("table2", o).report);
    const bool identical = first == second;

    CaseSpec spec = paper_case('C', o.grid);
    const auto clean = generate_clean_data(spec);
    std::size_t violations = 0, samples = 0;
    for (double delta : {0.01, 0.05}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto noisy = core::add_noise(clean, delta, noise_seed(o.seed, 'C', 0, seed));
            for (std::size_t j = 0; j < clean.values.size(); ++j) {
                for (std::size_t i = 0; i < clean.values[j].size(); ++i) {
                    const double g = clean.values[j][i];
                    ++samples;
                    if (std::abs(noisy.values[j][i] - g) > delta * std::abs(g)) ++violations;
                }
            }
        }
    }
    res.passed = identical && violations == 0;
    std::ostringstream os;
    os << (identical ? "reruns byte-identical" : "reruns DIFFER") << "; noise bound violations "
       << violations << " of " << samples << " samples";
    res.detail = os.str();
    return res;
}

} // namespace fracinv::experiments
