#include "nvi/trajectory_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nvi {

std::vector<std::string> trajectory_columns(Eigen::Index dim) {
    std::vector<std::string> cols{"t", "beta_t", "eps_t", "gamma_t", "q_t", "tau_t", "e_t", "inner_k"};
    for (Eigen::Index i = 1; i <= dim; ++i) cols.push_back(fmt::format("w_{}", i));
    cols.insert(cols.end(), {"merit_norm", "dist_to_solution", "gamma_gap"});
    return cols;
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

namespace {

std::string format_optional(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

}  // namespace

void write_trajectory_header(std::ostream& os, Eigen::Index dim) {
    const auto cols = trajectory_columns(dim);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
}

void write_trajectory_row(std::ostream& os, const OuterRecord& rec, bool record_gap) {
    os << rec.t << ',' << format_double(rec.beta_t) << ',' << format_double(rec.eps_t) << ','
       << format_double(rec.gamma_t) << ',' << format_double(rec.q_t) << ','
       << format_double(rec.tau_t) << ',' << format_double(rec.e_t) << ',' << rec.inner_k;
    for (Eigen::Index i = 0; i < rec.w.size(); ++i) os << ',' << format_double(rec.w[i]);
    os << ',' << format_double(rec.merit_norm) << ',' << format_optional(rec.dist_to_solution)
       << ',' << (record_gap ? format_optional(rec.gamma_gap) : std::string()) << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw InvalidArgument("csv: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
    const std::string& cell = rows.at(row).at(column(name));
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::stod(cell);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    CsvTable table;
    std::string line;
    if (std::getline(in, line)) table.header = split(line);
    while (std::getline(in, line)) {
        if (!line.empty()) table.rows.push_back(split(line));
    }
    return table;
}

}  // namespace nvi
