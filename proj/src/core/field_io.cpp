#include "fracinv/core/field_io.hpp"

#include "fracinv/core/errors.hpp"

#include <fstream>
#include <iomanip>

namespace fracinv::core {

std::vector<std::filesystem::path> write_field_csv(const SolutionField& field,
                                                   const std::filesystem::path& dir,
                                                   const std::string& prefix) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> paths;
    for (std::size_t k = 0; k < field.components(); ++k) {
        auto path = dir / (prefix + "_u" + std::to_string(k + 1) + ".csv");
        std::ofstream os(path);
        if (!os) throw IoError("cannot write " + path.string());
        os << std::setprecision(17);
        os << 't';
        for (std::size_t m = 0; m < field.space().nodes(); ++m) os << ",x" << m;
        os << '\n';
        for (std::size_t i = 0; i <= field.time().steps(); ++i) {
            os << field.time().node(i);
            for (double v : field.slice(k, i)) os << ',' << v;
            os << '\n';
        }
        if (!os) throw IoError("write failed for " + path.string());
        paths.push_back(std::move(path));
    }
    return paths;
}

} // namespace fracinv::core
