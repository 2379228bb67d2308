#pragma once

#include "nvi/outer_loop.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nvi {

struct RunConfig {
    std::string problem = "zero_sum_game";
    double alpha = 1.0;
    double eta = 0.55;
    double epsbar = 1e-3;
    int outer_iters = 100;
    double theta = 0.5;
    /// Initial anchor w^1; unset picks default_start(problem).
    std::optional<Point> start;
    DeltaModel delta;
    long k_max = kDefaultInnerCap;
    std::filesystem::path output = "out";
    bool record_gap = true;
};

/// Reproduction grid for sweeps: alpha values and starting points.
struct SweepConfig {
    RunConfig base;
    std::vector<double> alphas{0.1, 1.0, 10.0};
    /// Empty means default_starts(problem).
    std::vector<Point> starts;
};

/// (30, 20) for the zero-sum game, the domain center otherwise.
Point default_start(const ProblemInstance& problem);
/// Corners of the domain box (up to dimension 4) followed by its center.
std::vector<Point> default_starts(const ProblemInstance& problem);

OuterConfig make_outer_config(const RunConfig& cfg, const ProblemInstance& problem);

/// "1.5,2,-3" -> (1.5, 2, -3)
Point parse_point(const std::string& text);
/// "exact", "scaled:<D>" or "harmonic:<D>"
DeltaModel parse_delta(const std::string& text, std::uint64_t seed);
std::string format_delta(const DeltaModel& model);

/// Reads a flat key = value file (TOML/INI syntax, '#' comments). Keys:
/// problem, alpha, eta, epsbar, outer_iters, theta, start, delta, seed,
/// k_max, out, record_gap, alphas, starts. Unknown keys and sections are
/// errors. Points are written "x,y" or [x, y]; starts as ["x,y", ...].
/// Without `alphas`/`starts` the sweep grid falls back to a lone `alpha` /
/// `start` when given, else to the defaults.
SweepConfig load_sweep_config(const std::filesystem::path& path);
SweepConfig parse_sweep_config(const std::string& text);

}  // namespace nvi
