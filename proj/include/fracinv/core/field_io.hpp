#pragma once

#include "fracinv/core/forward_solver.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fracinv::core {

/// Writes one CSV per component (<prefix>_u<k>.csv, k 1-based): one row per
/// time node, first column t, then one column per space node. Returns the paths.
std::vector<std::filesystem::path> write_field_csv(const SolutionField& field,
                                                   const std::filesystem::path& dir,
                                                   const std::string& prefix = "field");

} // namespace fracinv::core
