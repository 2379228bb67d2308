#include "nvi/outer_loop.hpp"

#include "nvi/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nvi {

double beta_schedule(int t, double eta) {
    if (t < 1) throw InvalidArgument("beta_schedule: t must be >= 1");
    return std::pow(static_cast<double>(t) + 1.0, -eta);
}

double eps_schedule(int t, double epsbar) {
    if (t < 1) throw InvalidArgument("eps_schedule: t must be >= 1");
    const double tp1 = static_cast<double>(t) + 1.0;
    return epsbar / (tp1 * tp1);
}

double accuracy_e(double theta_lo, double theta_hi, double bound_d, double gamma_t, double lip_t,
                  double alpha, double eps_t) {
    if (!(theta_lo > 0.0) || theta_lo > theta_hi) {
        throw InvalidArgument("accuracy_e: need 0 < theta_lo <= theta_hi");
    }
    if (!(alpha > 0.0)) throw InvalidArgument("accuracy_e: alpha must be positive");
    return (1.0 + theta_hi * bound_d) * (1.0 + gamma_t * lip_t) / (alpha * theta_lo) * eps_t;
}

void OuterConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("OuterConfig: alpha must be > 0");
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw InvalidArgument("OuterConfig: eta must be >= 0");
    if (!(epsbar >= 0.0) || !std::isfinite(epsbar)) {
        throw InvalidArgument("OuterConfig: epsbar must be >= 0");
    }
    if (outer_iters < 1) throw InvalidArgument("OuterConfig: outer iterations must be >= 1");
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("OuterConfig: theta must be in (0, 1]");
    if (k_max < 1) throw InvalidArgument("OuterConfig: k_max must be >= 1");
    if (w1.size() < 1 || !all_finite(w1)) {
        throw InvalidArgument("OuterConfig: initial anchor must be a finite point");
    }
    if (delta.kind != DeltaKind::exact && !(delta.bound >= 0.0)) {
        throw InvalidArgument("OuterConfig: perturbation bound must be >= 0");
    }
    if (early_exit_tol && !(*early_exit_tol >= 0.0)) {
        throw InvalidArgument("OuterConfig: early-exit tolerance must be >= 0");
    }
}

double gap_gamma(const LipschitzMap& g, const Point& w_prev, const Point& w_curr,
                 const Point& solution) {
    require_same_dim(w_prev, w_curr, "gap_gamma");
    require_same_dim(w_curr, solution, "gap_gamma");
    return g(w_curr).dot(solution - w_curr);
}

namespace {

double perturbation_bound(const DeltaModel& model) {
    return model.kind == DeltaKind::exact ? 0.0 : model.bound;
}

}  // namespace

NestedResult solve_nested(const ProblemInstance& problem, const OuterConfig& cfg,
                          const RecordSink& sink) {
    cfg.validate();
    require_same_dim(cfg.w1, problem.domain.lower(), "solve_nested: initial anchor");

    NestedResult result;
    result.w_final = cfg.w1;
    if (problem.theory_unbounded) {
        result.warnings.push_back(fmt::format(
            "problem '{}' has unbounded dom(A); convergence theory assumes a bounded domain",
            problem.name));
    }
    if (cfg.eta > 1.0) {
        result.warnings.push_back(
            fmt::format("eta = {} > 1: the Tikhonov schedule is summable", cfg.eta));
    }

    bool warned_energy = false;
    const double bound_d = perturbation_bound(cfg.delta);
    Point w = cfg.w1;
    for (int t = 1; t < cfg.outer_iters; ++t) {
        OuterRecord rec;
        rec.t = t;
        rec.beta_t = beta_schedule(t, cfg.eta);
        rec.eps_t = eps_schedule(t, cfg.epsbar);

        const FBContext ctx(problem.a, problem.f, problem.g, PhiParams(cfg.alpha, rec.beta_t), w);
        rec.gamma_t = ctx.gamma();
        rec.q_t = ctx.q();
        rec.tau_t = select_tau(cfg.theta, rec.q_t);
        rec.energy_factor_t = energy_factor(cfg.theta, rec.q_t);
        rec.e_t = accuracy_e(cfg.theta, cfg.theta, bound_d, rec.gamma_t, ctx.lipschitz(), cfg.alpha,
                             rec.eps_t);
        if (rec.energy_factor_t >= 1.0 && !warned_energy) {
            result.warnings.push_back(fmt::format(
                "t = {}: Q = 1 - theta + 2 theta q^2 = {:.6g} >= 1 (q = {:.6g}); the inner-loop "
                "energy estimate does not contract",
                t, rec.energy_factor_t, rec.q_t));
            warned_energy = true;
        }

        InnerParams params{cfg.theta, rec.tau_t, rec.eps_t, cfg.k_max, cfg.delta};
        // Distinct perturbation streams per outer step.
        params.delta.seed = cfg.delta.seed + static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ULL;

        InnerResult inner;
        try {
            inner = ikm_run(ctx, params, w);
        } catch (const NonFiniteIterate& err) {
            throw SolverAbort(fmt::format("outer step {}: {}", t, err.what()), std::move(result));
        }
        rec.inner_k = inner.stop_k;
        rec.inner_capped = inner.stopped_by == StopReason::cap;
        if (rec.inner_capped) {
            result.warnings.push_back(
                fmt::format("t = {}: inner loop hit k_max = {} before the stopping rule", t,
                            cfg.k_max));
        }

        rec.w = inner.v_final;
        rec.merit_norm = merit(ctx, rec.w).norm();
        if (problem.solution) {
            rec.dist_to_solution = (rec.w - *problem.solution).norm();
            rec.gamma_gap = gap_gamma(problem.g, w, rec.w, *problem.solution);
        }
        if (!all_finite(rec.w) || !std::isfinite(rec.merit_norm)) {
            throw SolverAbort(fmt::format("outer step {}: non-finite anchor", t), std::move(result));
        }

        const double step = (rec.w - w).norm();
        w = rec.w;
        result.w_final = w;
        if (sink) sink(rec);
        result.trajectory.push_back(std::move(rec));
        if (cfg.early_exit_tol && step <= *cfg.early_exit_tol) break;
    }
    return result;
}

SlowControlReport validate_slow_control(const ProblemInstance& problem, const OuterConfig& cfg,
                                        int horizon) {
    if (horizon < 10) throw InvalidArgument("validate_slow_control: horizon must be >= 10");
    SlowControlReport rep;
    rep.horizon = horizon;

    const double bound_d = perturbation_bound(cfg.delta);
    const int half = horizon / 2;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= horizon; ++t) {
        const double beta = beta_schedule(t, cfg.eta);
        rep.beta_sum += beta;
        if (t <= half) continue;
        const PhiParams phi(cfg.alpha, beta);
        const double lip = lipschitz_bound(phi, problem.f.lipschitz, problem.g.lipschitz);
        const double gamma = default_stepsize(cfg.alpha, lip);
        const double e = accuracy_e(cfg.theta, cfg.theta, bound_d, gamma, lip, cfg.alpha,
                                    eps_schedule(t, cfg.epsbar));
        const double ratio = e / beta;
        rep.tail_max_ratio = std::max(rep.tail_max_ratio, ratio);
        if (ratio > prev_ratio * (1.0 + 1e-12)) rep.ratio_decreasing = false;
        prev_ratio = ratio;
    }
    const double b_half = beta_schedule(half, cfg.eta);
    const double b_end = beta_schedule(horizon, cfg.eta);
    rep.beta_decay_exponent =
        std::log(b_half / b_end) / std::log((horizon + 1.0) / (half + 1.0));
    rep.beta_summable = rep.beta_decay_exponent > 1.0 + 1e-9;
    rep.ratio_flag = !rep.ratio_decreasing;
    return rep;
}

}  // namespace nvi
