#pragma once

// Relaxed inertial inexact Krasnoselskii-Mann iteration on the
// forward-backward map:
//
//   z^k     = v^k + tau (v^k - v^{k-1})
//   v^{k+1} = (1 - theta) z^k + theta (T_gamma(z^k) + delta_k)
//
// started from v^0 = v^1 = v0 and stopped at the first k >= 1 with
// |v^{k+1} - z^k| <= eps.

#include "nvi/fb_engine.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nvi {

enum class DeltaKind {
    exact,          // delta_k = 0
    scaled_random,  // |delta_k| = d_k * unit, d_k ~ U[0, D]
    harmonic,       // |delta_k| = (D / k) * unit, square summable
};

/// Error model for the perturbed forward-backward map. `unit` is the scale
/// the magnitudes multiply; unset means the run's stopping tolerance eps.
struct DeltaModel {
    DeltaKind kind = DeltaKind::exact;
    double bound = 0.0;  // D
    std::uint64_t seed = 0;
    std::optional<double> unit;

    static DeltaModel exact() { return {}; }
    static DeltaModel scaled_random(double bound, std::uint64_t seed) {
        return {DeltaKind::scaled_random, bound, seed, std::nullopt};
    }
    static DeltaModel harmonic(double bound, std::uint64_t seed, std::optional<double> unit) {
        return {DeltaKind::harmonic, bound, seed, unit};
    }
};

/// delta_k for step k. Deterministic in (model.seed, k).
Point draw_perturbation(const DeltaModel& model, Eigen::Index dim, double eps, long k);

/// T_gamma(z) + delta_k.
Point perturbed_step(const FBContext& ctx, const Point& z, const DeltaModel& model, double eps,
                     long k);

inline constexpr double kTauCap = 0.999;
inline constexpr long kDefaultInnerCap = 100000;

struct InnerParams {
    double theta = 0.5;
    double tau = 0.0;
    double eps = 1e-6;
    long k_max = kDefaultInnerCap;
    DeltaModel delta;

    /// Validates ranges and, when q is given, the inertia condition for it.
    void validate(std::optional<double> q = std::nullopt) const;
};

/// Q = 1 - theta + 2 theta q^2.
double energy_factor(double theta, double q);

/// Constant-parameter inertia condition
///   f(tau) = Q tau (1 + tau) + lambda tau (1 - tau) - Q lambda (1 - tau),
/// lambda = (1 - theta) / theta. The condition holds iff f(tau) <= 0.
double assumption4_residual(double theta, double tau, double q);

/// Largest tau in [0, kTauCap] with assumption4_residual(theta, tau, q) <= 0.
double select_tau(double theta, double q);

/// eps / (theta (1 - q)): distance of z^K to the subproblem solution once the
/// stopping rule fires (exact map).
double post_stop_bound(double eps, double theta, double q);

/// V_k = |v^k - u|^2 - tau |v^{k-1} - u|^2 + lambda (1 - tau) |v^k - v^{k-1}|^2,
/// with history[j] = v^j.
double lyapunov_energy(std::span<const Point> history, const Point& u_bar, double theta,
                       double tau, std::size_t k);

enum class StopReason { criterion, cap };

struct InnerStep {
    long k = 0;
    double residual = 0.0;  // |v^{k+1} - z^k|
    double delta_norm = 0.0;
    std::optional<double> dist;    // |v^{k+1} - u|, with a reference point
    std::optional<double> energy;  // V_{k+1}, with a reference point
};

struct InnerResult {
    Point v_final;  // v^{K+1}
    Point z_final;  // z^K
    long stop_k = 0;
    StopReason stopped_by = StopReason::cap;
    std::vector<InnerStep> trace;
    /// v^0, v^1, ..., v^{K+1} when TraceOptions::keep_iterates is set.
    std::vector<Point> iterates;
};

struct TraceOptions {
    bool record = false;
    bool keep_iterates = false;
    /// Subproblem solution, enables dist/energy in the trace.
    std::optional<Point> reference;
};

InnerResult ikm_run(const FBContext& ctx, const InnerParams& params, const Point& v0,
                    const TraceOptions& trace = {});

}  // namespace nvi
