#pragma once

#include "nvi/errors.hpp"
#include "nvi/inner_loop.hpp"
#include "nvi/problems.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nvi {

/// beta_t = (t + 1)^(-eta)
double beta_schedule(int t, double eta);
/// eps_t = epsbar (t + 1)^(-2)
double eps_schedule(int t, double epsbar);

/// Accuracy of the new anchor implied by the stopping rule under the
/// |delta_k| = d_k eps_t error model, d_k in [0, D]:
///   e_t = (1 + theta_hi D)(1 + gamma_t L_t) / (alpha theta_lo) * eps_t
double accuracy_e(double theta_lo, double theta_hi, double bound_d, double gamma_t, double lip_t,
                  double alpha, double eps_t);

struct OuterConfig {
    double alpha = 1.0;
    double eta = 0.55;
    double epsbar = 1e-3;
    int outer_iters = 100;  // T
    double theta = 0.5;
    DeltaModel delta;
    Point w1;
    long k_max = kDefaultInnerCap;
    /// Stop once |w^{t+1} - w^t| <= tol; off by default.
    std::optional<double> early_exit_tol;

    void validate() const;
};

struct OuterRecord {
    int t = 0;
    Point w;  // w^{t+1}
    double beta_t = 0.0;
    double eps_t = 0.0;
    double gamma_t = 0.0;
    double q_t = 0.0;
    double tau_t = 0.0;
    double e_t = 0.0;
    double energy_factor_t = 0.0;  // Q_t = 1 - theta + 2 theta q_t^2
    long inner_k = 0;
    bool inner_capped = false;
    double merit_norm = 0.0;  // |merit(w^{t+1})| at (alpha, beta_t, w^t)
    std::optional<double> dist_to_solution;
    std::optional<double> gamma_gap;
};

struct NestedResult {
    Point w_final;
    std::vector<OuterRecord> trajectory;
    std::vector<std::string> warnings;
};

/// Per-step callback, invoked as soon as a record is complete.
using RecordSink = std::function<void(const OuterRecord&)>;

/// Thrown when an iterate turns non-finite; carries everything computed so far.
class SolverAbort : public SolverError {
public:
    SolverAbort(const std::string& what, NestedResult partial)
        : SolverError(what), partial_(std::move(partial)) {}
    const NestedResult& partial() const { return partial_; }

private:
    NestedResult partial_;
};

/// Tikhonov-regularized proximal outer loop: for t = 1, ..., T-1 solve the
/// subproblem at (alpha, beta_t, w^t) with the inertial inner loop to
/// tolerance eps_t, warm-started at w^t, and take its output as w^{t+1}.
NestedResult solve_nested(const ProblemInstance& problem, const OuterConfig& cfg,
                          const RecordSink& sink = {});

/// <G(w_curr), solution - w_curr>, the gap diagnostic with a known
/// singleton solution set standing in for the projection of w_prev onto it.
double gap_gamma(const LipschitzMap& g, const Point& w_prev, const Point& w_curr,
                 const Point& solution);

struct SlowControlReport {
    int horizon = 0;
    double beta_sum = 0.0;
    double beta_decay_exponent = 0.0;  // fitted from beta_{h/2}, beta_h
    bool beta_summable = false;        // flagged when the exponent exceeds 1
    double tail_max_ratio = 0.0;       // max e_t / beta_t over t in (h/2, h]
    bool ratio_decreasing = true;      // e_t / beta_t non-increasing on the tail
    bool ratio_flag = false;

    bool ok() const { return !beta_summable && !ratio_flag; }
};

/// Numerical check of the slow-control conditions: beta_t not summable and
/// e_t / beta_t -> 0.
SlowControlReport validate_slow_control(const ProblemInstance& problem, const OuterConfig& cfg,
                                        int horizon);

}  // namespace nvi
