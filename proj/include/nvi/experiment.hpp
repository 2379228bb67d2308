#pragma once

#include "nvi/config.hpp"
#include "nvi/sampling.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nvi {

struct RunSummary {
    Point w_final;
    std::optional<double> dist_final;
    long total_inner_iters = 0;
    int inner_capped_steps = 0;
    double wall_time = 0.0;  // seconds; reported, never written to disk
    std::filesystem::path csv_path;
    std::filesystem::path json_path;
    std::vector<std::string> warnings;
};

/// Runs solve_nested and writes <output>/trajectory.csv and
/// <output>/summary.json. Rows are flushed as they are produced, so a
/// SolverAbort leaves the partial trajectory and an "aborted" summary on disk
/// before it propagates.
RunSummary run_experiment(const RunConfig& cfg);

struct SweepEntry {
    double alpha = 0.0;
    Point start;
    std::filesystem::path directory;
    std::optional<RunSummary> summary;
    std::string error;  // non-empty when the run failed
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    std::filesystem::path aggregate_path;
};

/// Cross product alphas x starts, one run directory each (run_000, ...)
/// under base.output, then <output>/sweep.csv with
/// run, alpha, start, dist_final, total_inner_iters, status.
/// Parallel and serial execution write identical files.
SweepResult sweep(const RunConfig& base, const std::vector<double>& alphas,
                  const std::vector<Point>& starts, Execution exec = Execution::parallel);

SweepResult sweep(const SweepConfig& cfg, Execution exec = Execution::parallel);

}  // namespace nvi
