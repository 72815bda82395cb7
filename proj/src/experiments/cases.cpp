#include "fracinv/experiments/cases.hpp"

#include "fracinv/core/errors.hpp"
#include "fracinv/core/forward_solver.hpp"
#include "fracinv/experiments/parallel.hpp"

#include <algorithm>
#include <string>

namespace fracinv::experiments {

void CaseSpec::validate() const {
    const auto k = components();
    if (k < 1) throw ConfigError("case needs at least one component");
    if (coupling.rows() != truth.size() || coupling.cols() != truth.size()) {
        throw ConfigError("coupling matrix must be K x K");
    }
    core::check_components(observed, k);
    for (double d : noise_levels) {
        if (!(d >= 0.0 && d < 1.0)) throw ConfigError("noise levels must lie in [0, 1)");
    }
    for (const auto& g : initial_guesses) {
        if (g.size() != truth.size()) throw ConfigError("initial guess must have K entries");
        if (!((g.array() > 0.0) && (g.array() < 1.0)).all()) {
            throw ConfigError("initial guesses must lie in (0, 1)");
        }
    }
    if (trials < 1) throw ConfigError("trials must be at least 1");
    settings.validate();
    if (data_grid) {
        if (data_grid->time_steps % inversion_grid.time_steps != 0) {
            throw ConfigError("data grid N must be a multiple of the inversion grid N");
        }
        if (data_grid->length != inversion_grid.length ||
            data_grid->horizon != inversion_grid.horizon) {
            throw ConfigError("data and inversion grids must share L and T");
        }
    }
}

std::vector<std::size_t> paper_observed(char label) {
    switch (label) {
    case 'A': return {0};
    case 'B': return {1};
    case 'C': return {0, 1};
    case 'D': return {2};
    case 'E': return {1, 2};
    case 'F': return {0, 1, 2};
    default: throw ConfigError(std::string("unknown case label '") + label + "'");
    }
}

CaseSpec paper_case(char label, const GridSpec& grid) {
    CaseSpec spec;
    spec.label = label;
    spec.observed = paper_observed(label);
    const PaperSetup setup = label <= 'C' ? paper_config_k2(grid) : paper_config_k3(grid);
    spec.truth = setup.truth;
    spec.coupling = setup.config.coupling;
    spec.inversion_grid = grid;
    spec.noise_levels.clear();
    return spec;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t noise_seed(std::uint64_t base, char label, std::size_t delta_index,
                         std::size_t trial) noexcept {
    std::uint64_t h = splitmix64(base);
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(label)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(delta_index));
    return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

core::ObservationSeries generate_clean_data(const CaseSpec& spec) {
    const GridSpec grid = spec.data_grid.value_or(spec.inversion_grid);
    const PaperSetup setup = make_setup(spec.truth, spec.coupling, grid);
    const auto field = core::solve_forward(setup.config);
    const auto series = core::observe(field, spec.observed, spec.x0);
    return core::subsample(series, grid.time_steps / spec.inversion_grid.time_steps);
}

ExperimentReport run_case(const CaseSpec& spec) {
    spec.validate();
    if (spec.noise_levels.empty()) throw ConfigError("case has no noise levels");
    if (spec.initial_guesses.empty()) throw ConfigError("case has no initial guesses");
    const auto clean = generate_clean_data(spec);
    const PaperSetup inversion = make_setup(spec.truth, spec.coupling, spec.inversion_grid);

    struct Job {
        std::size_t delta_index;
        std::size_t trial;
        std::size_t guess;
    };
    std::vector<Job> jobs;
    for (std::size_t d = 0; d < spec.noise_levels.size(); ++d) {
        const std::size_t trials = spec.noise_levels[d] > 0.0 ? spec.trials : 1;
        for (std::size_t t = 0; t < trials; ++t) {
            for (std::size_t g = 0; g < spec.initial_guesses.size(); ++g) jobs.push_back({d, t, g});
        }
    }

    ExperimentReport report;
    report.rows.resize(jobs.size());
    parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
        const Job& job = jobs[i];
        const double delta = spec.noise_levels[job.delta_index];
        RunRow& row = report.rows[i];
        row.label = spec.label;
        row.noise_level = delta;
        row.trial = job.trial;
        row.initial = spec.initial_guesses[job.guess];
        if (delta > 0.0) row.seed = noise_seed(spec.seed_base, spec.label, job.delta_index, job.trial);
        const auto data = delta > 0.0 ? core::add_noise(clean, delta, *row.seed) : clean;
        const inverse::InverseProblem problem(inversion.config, data);
        row.result = inverse::reconstruct(row.initial, problem, spec.settings, spec.truth);
    });
    return report;
}

std::vector<Eigen::VectorXd> initial_guess_grid(std::size_t components) {
    std::vector<Eigen::VectorXd> out;
    if (components == 2) {
        for (int i = 9; i >= 1; --i) {
            for (int j = i; j >= 1; --j) out.push_back(Eigen::Vector2d(i / 10.0, j / 10.0));
        }
    } else if (components == 3) {
        for (int i = 9; i >= 1; --i) {
            for (int j = i; j >= 1; --j) {
                for (int k = j; k >= 1; --k) {
                    out.push_back(Eigen::Vector3d(i / 10.0, j / 10.0, k / 10.0));
                }
            }
        }
    } else {
        throw ConfigError("initial-guess grids exist only for K = 2 and K = 3");
    }
    return out;
}

SweepSummary summarize(const std::vector<RunRow>& rows) {
    SweepSummary s;
    for (const auto& r : rows) {
        if (r.result.converged()) {
            const auto it = r.result.iterations;
            s.min_iterations = s.converged == 0 ? it : std::min(s.min_iterations, it);
            s.max_iterations = std::max(s.max_iterations, it);
            ++s.converged;
        } else {
            ++s.diverged;
        }
    }
    return s;
}

ExperimentReport run_sweep(const SweepSpec& spec) {
    CaseSpec c = spec.base;
    c.initial_guesses = initial_guess_grid(c.components());
    c.noise_levels = {spec.noise_level};
    c.trials = 1;
    ExperimentReport report = run_case(c);
    report.sweep = summarize(report.rows);
    return report;
}

} // namespace fracinv::experiments
