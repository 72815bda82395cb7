#include "fracinv/experiments/report.hpp"

#include "fracinv/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace fracinv::experiments {

std::string fixed6(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t report_components(const ExperimentReport& report) {
    const auto k = report.rows.front().initial.size();
    for (const auto& r : report.rows) {
        if (r.initial.size() != k) throw ConfigError("report mixes systems of different size");
    }
    return static_cast<std::size_t>(k);
}

} // namespace

std::vector<CellStats> cell_statistics(const ExperimentReport& report) {
    using Key = std::tuple<char, double, std::vector<double>>;
    std::map<Key, std::vector<const RunRow*>> groups;
    std::vector<Key> order;
    for (const auto& r : report.rows) {
        Key key{r.label, r.noise_level, std::vector<double>(r.initial.begin(), r.initial.end())};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }

    std::vector<CellStats> out;
    for (const auto& key : order) {
        const auto& runs = groups[key];
        CellStats cell;
        cell.label = std::get<0>(key);
        cell.noise_level = std::get<1>(key);
        cell.initial = runs.front()->initial;
        cell.runs = runs.size();
        const auto k = cell.initial.size();
        cell.median_orders.resize(k);
        cell.median_rel_err_pct.resize(k);
        for (Eigen::Index c = 0; c < k; ++c) {
            std::vector<double> orders, errors;
            for (const RunRow* r : runs) {
                if (r->result.converged()) {
                    orders.push_back(r->result.orders[c]);
                    errors.push_back(r->result.relative_errors_pct ? (*r->result.relative_errors_pct)[c]
                                                                   : std::numeric_limits<double>::quiet_NaN());
                } else {
                    errors.push_back(std::numeric_limits<double>::infinity());
                }
            }
            cell.median_orders[c] = median(orders);
            cell.median_rel_err_pct[c] = median(errors);
        }
        for (const RunRow* r : runs) cell.converged += r->result.converged() ? 1 : 0;
        out.push_back(std::move(cell));
    }
    return out;
}

std::string runs_csv(const ExperimentReport& report) {
    if (report.rows.empty()) throw ConfigError("refusing to emit an empty report");
    const std::size_t k = report_components(report);
    std::ostringstream os;
    os << "case,delta";
    for (std::size_t i = 1; i <= k; ++i) os << ",alpha0_" << i;
    for (std::size_t i = 1; i <= k; ++i) os << ",alpha_star_" << i;
    for (std::size_t i = 1; i <= k; ++i) os << ",rel_err_pct_" << i;
    os << ",status,iterations,seed\n";
    for (const auto& r : report.rows) {
        os << r.label << ',' << fixed6(r.noise_level);
        for (double a : r.initial) os << ',' << fixed6(a);
        const bool ok = r.result.converged();
        for (std::size_t i = 0; i < k; ++i) {
            os << ',';
            if (ok) os << fixed6(r.result.orders[static_cast<Eigen::Index>(i)]);
        }
        for (std::size_t i = 0; i < k; ++i) {
            os << ',';
            if (ok && r.result.relative_errors_pct) {
                os << fixed6((*r.result.relative_errors_pct)[static_cast<Eigen::Index>(i)]);
            }
        }
        os << ',' << r.result.label() << ',' << r.result.iterations << ',';
        if (r.seed) os << *r.seed;
        os << '\n';
    }
    return os.str();
}

nlohmann::json summary_json(const ExperimentReport& report) {
    if (report.rows.empty()) throw ConfigError("refusing to emit an empty report");
    auto to_strings = [](const Eigen::VectorXd& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (double x : v) arr.push_back(fixed6(x));
        return arr;
    };
    nlohmann::json j;
    const SweepSummary all = report.sweep.value_or(summarize(report.rows));
    j["runs"] = report.rows.size();
    j["converged"] = all.converged;
    j["diverged"] = all.diverged;
    j["iteration_range"] = {all.min_iterations, all.max_iterations};
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : cell_statistics(report)) {
        cells.push_back({{"case", std::string(1, c.label)},
                         {"delta", fixed6(c.noise_level)},
                         {"alpha0", to_strings(c.initial)},
                         {"runs", c.runs},
                         {"converged", c.converged},
                         {"median_alpha_star", to_strings(c.median_orders)},
                         {"median_rel_err_pct", to_strings(c.median_rel_err_pct)}});
    }
    j["cells"] = std::move(cells);
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw IoError("write failed for " + path.string());
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               const std::filesystem::path& dir,
                                               const std::string& name) {
    if (report.rows.empty()) throw ConfigError("refusing to emit an empty report");
    const auto csv = dir / (name + ".csv");
    const auto json = dir / (name + ".json");
    write_text(csv, runs_csv(report));
    write_text(json, summary_json(report).dump(2) + "\n");
    return {csv, json};
}

} // namespace fracinv::experiments
