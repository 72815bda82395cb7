#include "fracinv/core/observation.hpp"

#include "fracinv/core/errors.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

namespace fracinv::core {

std::vector<double> ObservationSeries::stacked() const {
    std::vector<double> out;
    out.reserve(values.size() * samples());
    for (const auto& v : values) out.insert(out.end(), v.begin(), v.end());
    return out;
}

void check_components(const std::vector<std::size_t>& components, std::size_t count) {
    if (components.empty()) throw ConfigError("observed component set is empty");
    for (std::size_t c : components) {
        if (c >= count) {
            throw ConfigError("observed component " + std::to_string(c + 1) +
                              " does not exist (K = " + std::to_string(count) + ")");
        }
    }
}

double symmetric_unit(std::uint64_t bits) noexcept {
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53; // [0, 1)
    return 2.0 * u - 1.0;
}

ObservationSeries observe(const SolutionField& field, std::vector<std::size_t> components,
                          double x0, double noise_level, std::uint64_t seed) {
    check_components(components, field.components());
    std::sort(components.begin(), components.end());

    ObservationSeries series;
    series.node = field.space().snap(x0);
    series.position = x0;
    series.time = field.time();
    series.components = std::move(components);
    const std::size_t n = field.time().steps();
    for (std::size_t k : series.components) {
        std::vector<double> g(n);
        for (std::size_t i = 1; i <= n; ++i) g[i - 1] = field(k, i, series.node);
        series.values.push_back(std::move(g));
    }
    if (noise_level > 0.0) return add_noise(series, noise_level, seed);
    if (noise_level < 0.0) throw ConfigError("noise level must be nonnegative");
    return series;
}

ObservationSeries add_noise(const ObservationSeries& clean, double noise_level,
                            std::uint64_t seed) {
    if (!(noise_level >= 0.0 && noise_level < 1.0)) {
        throw ConfigError("noise level must lie in [0, 1)");
    }
    ObservationSeries noisy = clean;
    noisy.noise_level = noise_level;
    if (noise_level == 0.0) {
        noisy.seed.reset();
        return noisy;
    }
    noisy.seed = seed;
    std::mt19937_64 rng(seed);
    for (auto& v : noisy.values) {
        for (double& g : v) g *= 1.0 + noise_level * symmetric_unit(rng());
    }
    return noisy;
}

ObservationSeries subsample(const ObservationSeries& series, std::size_t stride) {
    if (stride == 0 || series.samples() % stride != 0) {
        throw ConfigError("time subsampling stride must divide the number of samples");
    }
    if (stride == 1) return series;
    ObservationSeries out = series;
    out.time = TimeGrid(series.time.horizon(), series.samples() / stride);
    for (auto& v : out.values) {
        std::vector<double> coarse;
        coarse.reserve(out.samples());
        for (std::size_t i = stride; i <= v.size(); i += stride) coarse.push_back(v[i - 1]);
        v = std::move(coarse);
    }
    return out;
}

} // namespace fracinv::core
