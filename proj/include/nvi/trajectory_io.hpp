#pragma once

#include "nvi/outer_loop.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nvi {

/// t, beta_t, eps_t, gamma_t, q_t, tau_t, e_t, inner_k, w_1..w_d, merit_norm,
/// dist_to_solution, gamma_gap
std::vector<std::string> trajectory_columns(Eigen::Index dim);

/// Doubles print with 17 significant digits; absent optionals print empty.
std::string format_double(double x);

void write_trajectory_header(std::ostream& os, Eigen::Index dim);
void write_trajectory_row(std::ostream& os, const OuterRecord& rec, bool record_gap = true);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
    /// NaN for an empty cell.
    double number(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace nvi
