// Command-line front end: solve, sweep, validate, oracle.

#include "nvi/experiment.hpp"
#include "nvi/oracle.hpp"
#include "nvi/outer_loop.hpp"
#include "nvi/trajectory_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <iostream>

namespace {

std::string format_point(const nvi::Point& p) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < p.size(); ++i) out += (i ? ", " : "") + nvi::format_double(p[i]);
    return out + ")";
}

void print_summary(const nvi::RunSummary& s) {
    fmt::print("w_final            {}\n", format_point(s.w_final));
    if (s.dist_final) fmt::print("dist_to_solution   {}\n", nvi::format_double(*s.dist_final));
    fmt::print("total_inner_iters  {}\n", s.total_inner_iters);
    fmt::print("wall_time          {:.3f} s\n", s.wall_time);
    fmt::print("trajectory         {}\n", s.csv_path.string());
    fmt::print("summary            {}\n", s.json_path.string());
    for (const auto& w : s.warnings) fmt::print(stderr, "warning: {}\n", w);
}

struct SolveArgs {
    std::string problem = "zero_sum_game";
    double alpha = 1.0;
    double eta = 0.55;
    double epsbar = 1e-3;
    int outer_iters = 100;
    double theta = 0.5;
    std::string start;
    std::string delta = "exact";
    std::uint64_t seed = 0;
    long k_max = nvi::kDefaultInnerCap;
    std::string out = "out";
    bool no_gap = false;
};

int run_solve(const SolveArgs& a) {
    nvi::RunConfig cfg;
    cfg.problem = a.problem;
    cfg.alpha = a.alpha;
    cfg.eta = a.eta;
    cfg.epsbar = a.epsbar;
    cfg.outer_iters = a.outer_iters;
    cfg.theta = a.theta;
    if (!a.start.empty()) cfg.start = nvi::parse_point(a.start);
    cfg.delta = nvi::parse_delta(a.delta, a.seed);
    cfg.k_max = a.k_max;
    cfg.output = a.out;
    cfg.record_gap = !a.no_gap;
    print_summary(nvi::run_experiment(cfg));
    return 0;
}

int run_sweep(const std::string& config_path, bool serial) {
    const nvi::SweepConfig cfg = nvi::load_sweep_config(config_path);
    const auto result =
        nvi::sweep(cfg, serial ? nvi::Execution::serial : nvi::Execution::parallel);
    int failures = 0;
    for (std::size_t i = 0; i < result.entries.size(); ++i) {
        const auto& e = result.entries[i];
        if (!e.error.empty()) {
            ++failures;
            fmt::print("run {:3d}  alpha={:<6g} start={}  FAILED: {}\n", i, e.alpha,
                       format_point(e.start), e.error);
            continue;
        }
        fmt::print("run {:3d}  alpha={:<6g} start={}  dist_final={}  inner_iters={}\n", i, e.alpha,
                   format_point(e.start),
                   e.summary->dist_final ? fmt::format("{:.6e}", *e.summary->dist_final) : "n/a",
                   e.summary->total_inner_iters);
    }
    fmt::print("aggregate          {}\n", result.aggregate_path.string());
    return failures == 0 ? 0 : 1;
}

int run_validate(const std::string& name, int samples, std::uint64_t seed, double eta,
                 double epsbar, double alpha) {
    const nvi::ProblemInstance problem = nvi::make_problem(name);
    bool ok = true;
    auto report_map = [&](const char* label, const nvi::LipschitzMap& map) {
        const auto r = nvi::check_monotone(map, problem.domain, samples, seed);
        fmt::print("{}: min <dM,dx>/|dx|^2 = {:.6e}, max |dM|/|dx| = {:.6e} (declared L = {:.6e})  {}\n",
                   label, r.min_monotone_ratio, r.max_lipschitz_ratio, map.lipschitz,
                   r.ok() ? "ok" : "VIOLATION");
        ok = ok && r.ok();
    };
    report_map("F", problem.f);
    report_map("G", problem.g);

    const auto rr = nvi::check_resolvent(problem.a, 1.0, problem.domain, samples, seed);
    fmt::print("A: max firm-nonexpansiveness excess = {:.3e}  {}\n", rr.max_excess,
               rr.ok() ? "ok" : "VIOLATION");
    ok = ok && rr.ok();
    if (problem.theory_unbounded) {
        fmt::print("A: dom(A) is unbounded; the bounded-domain assumption does not hold\n");
    }

    nvi::OuterConfig outer;
    outer.alpha = alpha;
    outer.eta = eta;
    outer.epsbar = epsbar;
    const auto sc = nvi::validate_slow_control(problem, outer, 1000);
    fmt::print("schedule: sum beta_t (t<=1000) = {:.6g}, decay exponent {:.4f}  {}\n", sc.beta_sum,
               sc.beta_decay_exponent, sc.beta_summable ? "SUMMABLE" : "ok");
    fmt::print("schedule: max e_t/beta_t on tail = {:.6e}, {}  {}\n", sc.tail_max_ratio,
               sc.ratio_decreasing ? "decreasing" : "not decreasing", sc.ratio_flag ? "FLAG" : "ok");
    ok = ok && sc.ok();

    if (problem.solution) {
        const double res = nvi::vi_residual(problem.a, problem.f, 1.0, *problem.solution).norm();
        fmt::print("solution {}: lower-level residual {:.3e}  {}\n", format_point(*problem.solution),
                   res, res <= 1e-8 ? "ok" : "VIOLATION");
        ok = ok && res <= 1e-8;
    }
    return ok ? 0 : 1;
}

int run_oracle(const std::string& name, double alpha, double beta, const std::string& anchor,
               double tol) {
    const nvi::ProblemInstance problem = nvi::make_problem(name);
    const auto res = nvi::oracle_solve(problem, alpha, beta, nvi::parse_point(anchor), tol);
    fmt::print("point       {}\n", format_point(res.point));
    fmt::print("iterations  {}\n", res.iterations);
    fmt::print("q           {}\n", nvi::format_double(res.q));
    if (res.rounding_limited) fmt::print("note        accuracy limited by double round-off\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nested variational inequality solver"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run the double-loop solver and write CSV/JSON");
    solve_cmd->add_option("--problem", solve.problem, "Problem name")->capture_default_str();
    solve_cmd->add_option("--alpha", solve.alpha, "Proximal weight")->capture_default_str();
    solve_cmd->add_option("--eta", solve.eta, "Tikhonov exponent, beta_t = (t+1)^-eta")
        ->capture_default_str();
    solve_cmd->add_option("--epsbar", solve.epsbar, "Tolerance scale, eps_t = epsbar (t+1)^-2")
        ->capture_default_str();
    solve_cmd->add_option("--outer-iters", solve.outer_iters, "Outer iterations T")
        ->capture_default_str();
    solve_cmd->add_option("--theta", solve.theta, "Relaxation")->capture_default_str();
    solve_cmd->add_option("--start", solve.start, "Initial anchor, comma separated");
    solve_cmd->add_option("--delta", solve.delta, "exact | scaled:<D> | harmonic:<D>")
        ->capture_default_str();
    solve_cmd->add_option("--seed", solve.seed, "Perturbation seed")->capture_default_str();
    solve_cmd->add_option("--k-max", solve.k_max, "Inner iteration cap")->capture_default_str();
    solve_cmd->add_option("--out", solve.out, "Output directory")->capture_default_str();
    solve_cmd->add_flag("--no-gap", solve.no_gap, "Leave the gamma_gap column empty");

    std::string sweep_config;
    bool sweep_serial = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an alpha x start grid from a config file");
    sweep_cmd->add_option("--config", sweep_config, "key = value config file")->required();
    sweep_cmd->add_flag("--serial", sweep_serial, "Run the grid on one thread");

    std::string validate_problem = "zero_sum_game";
    int validate_samples = 1000;
    std::uint64_t validate_seed = 0;
    double validate_eta = 0.55;
    double validate_epsbar = 1e-3;
    double validate_alpha = 1.0;
    auto* validate_cmd = app.add_subcommand("validate", "Check operator and schedule assumptions");
    validate_cmd->add_option("--problem", validate_problem)->capture_default_str();
    validate_cmd->add_option("--samples", validate_samples)->capture_default_str();
    validate_cmd->add_option("--seed", validate_seed)->capture_default_str();
    validate_cmd->add_option("--eta", validate_eta)->capture_default_str();
    validate_cmd->add_option("--epsbar", validate_epsbar)->capture_default_str();
    validate_cmd->add_option("--alpha", validate_alpha)->capture_default_str();

    std::string oracle_problem = "zero_sum_game";
    double oracle_alpha = 1.0;
    double oracle_beta = 0.0;
    std::string oracle_anchor;
    double oracle_tol = 1e-12;
    auto* oracle_cmd = app.add_subcommand("oracle", "Reference solution of one regularized subproblem");
    oracle_cmd->add_option("--problem", oracle_problem)->capture_default_str();
    oracle_cmd->add_option("--alpha", oracle_alpha)->capture_default_str();
    oracle_cmd->add_option("--beta", oracle_beta)->capture_default_str();
    oracle_cmd->add_option("--anchor", oracle_anchor)->required();
    oracle_cmd->add_option("--tol", oracle_tol)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*sweep_cmd) return run_sweep(sweep_config, sweep_serial);
        if (*validate_cmd) {
            return run_validate(validate_problem, validate_samples, validate_seed, validate_eta,
                                validate_epsbar, validate_alpha);
        }
        if (*oracle_cmd) {
            return run_oracle(oracle_problem, oracle_alpha, oracle_beta, oracle_anchor, oracle_tol);
        }
    } catch (const std::exception& err) {
        fmt::print(stderr, "error: {}\n", err.what());
        return 2;
    }
    return 0;
}
