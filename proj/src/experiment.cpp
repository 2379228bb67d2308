#include "nvi/experiment.hpp"

#include "nvi/trajectory_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <fstream>

namespace nvi {

namespace {

using json = nlohmann::json;

json to_json(const Point& p) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(p[i]);
    return arr;
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json config_json(const RunConfig& cfg, const Point& w1) {
    return json{{"problem", cfg.problem},
                {"alpha", cfg.alpha},
                {"eta", cfg.eta},
                {"epsbar", cfg.epsbar},
                {"outer_iters", cfg.outer_iters},
                {"theta", cfg.theta},
                {"start", to_json(w1)},
                {"delta", format_delta(cfg.delta)},
                {"seed", cfg.delta.seed},
                {"k_max", cfg.k_max},
                {"record_gap", cfg.record_gap}};
}

void write_summary(const std::filesystem::path& path, const RunConfig& cfg, const Point& w1,
                   const RunSummary& summary, const std::string& error) {
    json j{{"config", config_json(cfg, w1)},
           {"w_final", to_json(summary.w_final)},
           {"dist_final", optional_json(summary.dist_final)},
           {"total_inner_iters", summary.total_inner_iters},
           {"inner_capped_steps", summary.inner_capped_steps},
           {"trajectory_csv", summary.csv_path.filename().string()},
           {"warnings", summary.warnings},
           {"aborted", !error.empty()}};
    if (!error.empty()) j["error"] = error;
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed to write '" + path.string() + "'");
}

}  // namespace

RunSummary run_experiment(const RunConfig& cfg) {
    const ProblemInstance problem = make_problem(cfg.problem);
    const OuterConfig outer = make_outer_config(cfg, problem);

    std::filesystem::create_directories(cfg.output);
    RunSummary summary;
    summary.csv_path = cfg.output / "trajectory.csv";
    summary.json_path = cfg.output / "summary.json";
    summary.w_final = outer.w1;
    if (problem.solution) summary.dist_final = (outer.w1 - *problem.solution).norm();

    std::ofstream csv(summary.csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write '" + summary.csv_path.string() + "'");
    write_trajectory_header(csv, problem.dim());

    auto sink = [&](const OuterRecord& rec) {
        write_trajectory_row(csv, rec, cfg.record_gap);
        csv.flush();
        summary.total_inner_iters += rec.inner_k;
        summary.inner_capped_steps += rec.inner_capped ? 1 : 0;
        summary.w_final = rec.w;
        summary.dist_final = rec.dist_to_solution;
    };

    const auto t0 = std::chrono::steady_clock::now();
    try {
        NestedResult result = solve_nested(problem, outer, sink);
        summary.warnings = std::move(result.warnings);
    } catch (const SolverAbort& err) {
        summary.warnings = err.partial().warnings;
        csv.close();
        write_summary(summary.json_path, cfg, outer.w1, summary, err.what());
        throw;
    }
    summary.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    csv.close();
    write_summary(summary.json_path, cfg, outer.w1, summary, "");
    return summary;
}

SweepResult sweep(const RunConfig& base, const std::vector<double>& alphas,
                  const std::vector<Point>& starts, Execution exec) {
    if (alphas.empty() || starts.empty()) throw InvalidArgument("sweep: empty alpha or start list");

    SweepResult result;
    for (double alpha : alphas) {
        for (const Point& start : starts) {
            SweepEntry entry;
            entry.alpha = alpha;
            entry.start = start;
            entry.directory = base.output / fmt::format("run_{:03d}", result.entries.size());
            result.entries.push_back(std::move(entry));
        }
    }

    auto run_one = [&](SweepEntry& entry) {
        RunConfig cfg = base;
        cfg.alpha = entry.alpha;
        cfg.start = entry.start;
        cfg.output = entry.directory;
        try {
            entry.summary = run_experiment(cfg);
        } catch (const std::exception& err) {
            entry.error = err.what();
        }
    };

    const auto n = static_cast<std::ptrdiff_t>(result.entries.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) run_one(result.entries[static_cast<std::size_t>(i)]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) run_one(result.entries[static_cast<std::size_t>(i)]);
    }

    std::filesystem::create_directories(base.output);
    result.aggregate_path = base.output / "sweep.csv";
    std::ofstream agg(result.aggregate_path, std::ios::binary);
    agg << "run,alpha,start,dist_final,total_inner_iters,status\n";
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        const SweepEntry& e = result.entries[i];
        std::string start;
        for (Eigen::Index k = 0; k < e.start.size(); ++k) {
            start += (k ? ";" : "") + format_double(e.start[k]);
        }
        std::string dist;
        std::string iters;
        if (e.summary) {
            if (e.summary->dist_final) dist = format_double(*e.summary->dist_final);
            iters = std::to_string(e.summary->total_inner_iters);
        }
        agg << i << ',' << format_double(e.alpha) << ',' << start << ',' << dist << ',' << iters
            << ',' << (e.error.empty() ? "ok" : "failed") << '\n';
    }
    if (!agg) throw std::runtime_error("failed to write '" + result.aggregate_path.string() + "'");
    return result;
}

SweepResult sweep(const SweepConfig& cfg, Execution exec) {
    std::vector<Point> starts = cfg.starts;
    if (starts.empty()) starts = default_starts(make_problem(cfg.base.problem));
    return sweep(cfg.base, cfg.alphas, starts, exec);
}

}  // namespace nvi
