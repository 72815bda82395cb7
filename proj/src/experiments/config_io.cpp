#include "fracinv/experiments/config_io.hpp"

#include "fracinv/core/errors.hpp"
#include "fracinv/experiments/presets.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fracinv::experiments {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {"K", "alpha_true", "C", "N", "M", "L", "T", "x0",
                                     "observed_components", "delta", "alpha0", "tol",
                                     "fd_step", "max_iters"};

Eigen::VectorXd vector_of(const json& j, std::size_t size, const char* key) {
    if (!j.is_array() || j.size() != size) {
        throw ConfigError(std::string(key) + ": expected an array of " + std::to_string(size) + " numbers");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < size; ++i) {
        if (!j[i].is_number()) throw ConfigError(std::string(key) + ": entries must be numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

template <class T>
T scalar(const json& j, const char* key) {
    if constexpr (std::is_same_v<T, double>) {
        if (!j.is_number()) throw ConfigError(std::string(key) + ": expected a number");
    } else {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
            throw ConfigError(std::string(key) + ": expected a non-negative integer");
        }
    }
    return j.get<T>();
}

} // namespace

const Eigen::VectorXd& ExperimentConfig::true_orders() const {
    if (!truth) throw ConfigError("alpha_true is required for this command");
    return *truth;
}

core::SystemConfig ExperimentConfig::system() const {
    const Eigen::VectorXd orders = truth ? *truth : initial_guesses.front();
    return make_setup(orders, coupling, grid).config;
}

CaseSpec ExperimentConfig::case_spec() const {
    CaseSpec spec;
    spec.label = 'X';
    spec.truth = true_orders();
    spec.coupling = coupling;
    spec.observed = observed;
    spec.noise_levels = noise_levels;
    spec.initial_guesses = initial_guesses;
    spec.x0 = x0;
    spec.inversion_grid = grid;
    spec.settings = settings;
    spec.validate();
    return spec;
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (!j.contains("K")) throw ConfigError("config key 'K' is required");

    ExperimentConfig cfg;
    cfg.components = scalar<std::size_t>(j["K"], "K");
    const std::size_t k = cfg.components;
    if (k < 1) throw ConfigError("K must be at least 1");

    if (j.contains("alpha_true")) cfg.truth = vector_of(j["alpha_true"], k, "alpha_true");

    if (j.contains("C")) {
        const json& c = j["C"];
        if (!c.is_array() || c.size() != k) throw ConfigError("C: expected K rows");
        cfg.coupling.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        for (std::size_t r = 0; r < k; ++r) {
            cfg.coupling.row(static_cast<Eigen::Index>(r)) = vector_of(c[r], k, "C").transpose();
        }
    } else if (k == 2) {
        cfg.coupling = paper_config_k2().config.coupling;
    } else if (k == 3) {
        cfg.coupling = paper_config_k3().config.coupling;
    } else {
        throw ConfigError("C is required unless K is 2 or 3");
    }

    if (j.contains("N")) cfg.grid.time_steps = scalar<std::size_t>(j["N"], "N");
    if (j.contains("M")) cfg.grid.intervals = scalar<std::size_t>(j["M"], "M");
    if (j.contains("L")) cfg.grid.length = scalar<double>(j["L"], "L");
    if (j.contains("T")) cfg.grid.horizon = scalar<double>(j["T"], "T");
    if (j.contains("x0")) cfg.x0 = scalar<double>(j["x0"], "x0");

    if (j.contains("observed_components")) {
        const json& obs = j["observed_components"];
        if (!obs.is_array() || obs.empty()) throw ConfigError("observed_components: expected a nonempty array");
        for (const auto& o : obs) {
            const auto idx = scalar<std::size_t>(o, "observed_components");
            if (idx < 1 || idx > k) throw ConfigError("observed_components are 1-based and must be <= K");
            cfg.observed.push_back(idx - 1);
        }
    } else {
        for (std::size_t i = 0; i < k; ++i) cfg.observed.push_back(i);
    }

    if (j.contains("delta")) {
        const json& d = j["delta"];
        cfg.noise_levels.clear();
        if (d.is_array()) {
            for (const auto& v : d) cfg.noise_levels.push_back(scalar<double>(v, "delta"));
        } else {
            cfg.noise_levels.push_back(scalar<double>(d, "delta"));
        }
        if (cfg.noise_levels.empty()) throw ConfigError("delta: empty list");
    }

    if (j.contains("alpha0")) {
        const json& a = j["alpha0"];
        if (a.is_array() && !a.empty() && a[0].is_array()) {
            for (const auto& g : a) cfg.initial_guesses.push_back(vector_of(g, k, "alpha0"));
        } else {
            cfg.initial_guesses.push_back(vector_of(a, k, "alpha0"));
        }
    } else {
        cfg.initial_guesses.push_back(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(k), 0.5));
    }

    if (j.contains("tol")) cfg.settings.tolerance = scalar<double>(j["tol"], "tol");
    if (j.contains("fd_step")) cfg.settings.fd_step = scalar<double>(j["fd_step"], "fd_step");
    if (j.contains("max_iters")) cfg.settings.max_iterations = scalar<std::size_t>(j["max_iters"], "max_iters");
    cfg.settings.validate();

    // Builds the grids and the system so that bad values fail here.
    try {
        const core::SystemConfig sys = cfg.system();
        sys.validate();
        (void)sys.space.snap(cfg.x0);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    for (double d : cfg.noise_levels) {
        if (!(d >= 0.0 && d < 1.0)) throw ConfigError("delta must lie in [0, 1)");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j);
}

std::string data_csv(const core::ObservationSeries& series) {
    std::ostringstream os;
    os.precision(17);
    os << 't';
    for (auto k : series.components) os << ",g_" << k + 1;
    os << '\n';
    for (std::size_t i = 1; i <= series.samples(); ++i) {
        os << series.time.node(i);
        for (const auto& v : series.values) os << ',' << v[i - 1];
        os << '\n';
    }
    return os.str();
}

core::ObservationSeries read_data_csv(const std::filesystem::path& path, const core::TimeGrid& time,
                                      double x0) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open data file " + path.string());
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };

    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty data file");
    const auto header = split(line);
    if (header.size() < 2 || header[0] != "t") throw ConfigError(path.string() + ": header must be t,g_<k>,...");

    core::ObservationSeries series;
    series.position = x0;
    series.time = time;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const auto& h = header[c];
        std::size_t k = 0;
        try {
            if (h.rfind("g_", 0) != 0) throw std::invalid_argument(h);
            k = std::stoul(h.substr(2));
        } catch (const std::exception&) {
            throw ConfigError(path.string() + ": bad column '" + h + "'");
        }
        if (k < 1) throw ConfigError(path.string() + ": components are 1-based");
        series.components.push_back(k - 1);
    }
    if (!std::is_sorted(series.components.begin(), series.components.end())) {
        throw ConfigError(path.string() + ": columns must be in ascending component order");
    }
    series.values.assign(series.components.size(), {});

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) throw ConfigError(path.string() + ": ragged row");
        ++row;
        try {
            const double t = std::stod(cells[0]);
            if (row > time.steps() || std::abs(t - time.node(row)) > 1e-9 * time.horizon()) {
                throw ConfigError(path.string() + ": row " + std::to_string(row) +
                                  " does not match the time grid t_i = i T / N");
            }
            for (std::size_t c = 1; c < cells.size(); ++c) series.values[c - 1].push_back(std::stod(cells[c]));
        } catch (const std::invalid_argument&) {
            throw ConfigError(path.string() + ": non-numeric cell in row " + std::to_string(row));
        }
    }
    if (row != time.steps()) {
        throw ConfigError(path.string() + ": expected " + std::to_string(time.steps()) + " rows, got " +
                          std::to_string(row));
    }
    return series;
}

} // namespace fracinv::experiments
