#include "fracinv/experiments/tables.hpp"

#include "fracinv/core/errors.hpp"
#include "fracinv/experiments/report.hpp"

#include <sstream>

namespace fracinv::experiments {

namespace {

CaseSpec make_case(char label, const ReproduceOptions& o) {
    CaseSpec spec = paper_case(label, o.grid);
    spec.seed_base = o.seed;
    spec.threads = o.threads;
    spec.settings = o.settings;
    spec.trials = o.trials;
    spec.noise_levels = o.noise_levels;
    if (o.fine_data) {
        GridSpec fine = o.grid;
        fine.time_steps *= 4;
        fine.intervals *= 4;
        spec.data_grid = fine;
    }
    return spec;
}

void append(ExperimentReport& into, ExperimentReport&& from) {
    for (auto& r : from.rows) into.rows.push_back(std::move(r));
}

std::string vector_cell(const Eigen::VectorXd& v) {
    std::string s = "\"(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fixed6(v[i]);
    return s + ")\"";
}

std::string accuracy_table(const ExperimentReport& report, const std::vector<double>& deltas,
                           bool orders) {
    std::ostringstream os;
    os << "case";
    for (double d : deltas) os << ",delta_" << fixed6(d);
    os << '\n';
    const auto cells = cell_statistics(report);
    for (char label : {'A', 'B', 'C'}) {
        os << label;
        for (double d : deltas) {
            os << ',';
            for (const auto& c : cells) {
                if (c.label == label && c.noise_level == d) {
                    os << vector_cell(orders ? c.median_orders : c.median_rel_err_pct);
                }
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string sweep_table(const ExperimentReport& report, const std::string& labels) {
    std::ostringstream os;
    os << "case,convergence,divergence,iteration_min,iteration_max\n";
    for (char label : labels) {
        const auto s = summarize(rows_for(report, label));
        os << label << ',' << s.converged << ',' << s.diverged << ',' << s.min_iterations << ','
           << s.max_iterations << '\n';
    }
    return os.str();
}

} // namespace

std::vector<RunRow> rows_for(const ExperimentReport& report, char label) {
    std::vector<RunRow> out;
    for (const auto& r : report.rows) {
        if (r.label == label) out.push_back(r);
    }
    return out;
}

TableOutput reproduce_table(const std::string& name, const ReproduceOptions& options) {
    TableOutput out;
    out.name = name;
    if (name == "table1" || name == "table2" || name == "table3") {
        const Eigen::Vector2d guess = name == "table3" ? Eigen::Vector2d(0.7, 0.3)
                                                       : Eigen::Vector2d(0.5, 0.5);
        for (char label : {'A', 'B', 'C'}) {
            CaseSpec spec = make_case(label, options);
            spec.initial_guesses = {guess};
            append(out.report, run_case(spec));
        }
        out.table_csv = accuracy_table(out.report, options.noise_levels, name == "table1");
    } else if (name == "table4" || name == "table5") {
        const std::string labels = name == "table4" ? "ABC" : "DEF";
        for (char label : labels) {
            SweepSpec sweep{make_case(label, options), 0.0};
            append(out.report, run_sweep(sweep));
        }
        out.report.sweep = summarize(out.report.rows);
        out.table_csv = sweep_table(out.report, labels);
    } else {
        throw ConfigError("unknown table '" + name + "' (expected table1..table5)");
    }
    return out;
}

std::vector<std::filesystem::path> write_table(const TableOutput& out,
                                               const std::filesystem::path& dir) {
    auto paths = emit_report(out.report, dir, out.name + "_runs");
    const auto table = dir / (out.name + ".csv");
    write_text(table, out.table_csv);
    paths.push_back(table);
    return paths;
}

} // namespace fracinv::experiments
