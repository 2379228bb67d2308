#include "nvi/inner_loop.hpp"

#include "nvi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nvi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 step_engine(std::uint64_t seed, long k) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(k)));
}

}  // namespace

Point draw_perturbation(const DeltaModel& model, Eigen::Index dim, double eps, long k) {
    if (model.kind == DeltaKind::exact || model.bound == 0.0) return Point::Zero(dim);
    if (k < 1) throw InvalidArgument("draw_perturbation: k must be >= 1");
    if (!(model.bound >= 0.0)) throw InvalidArgument("DeltaModel: D must be nonnegative");

    auto gen = step_engine(model.seed, k);
    std::normal_distribution<double> normal(0.0, 1.0);
    Point dir(dim);
    do {
        for (Eigen::Index i = 0; i < dim; ++i) dir[i] = normal(gen);
    } while (dir.squaredNorm() == 0.0);
    dir.normalize();

    double d = 0.0;
    if (model.kind == DeltaKind::scaled_random) {
        d = std::uniform_real_distribution<double>(0.0, model.bound)(gen);
    } else {
        d = model.bound / static_cast<double>(k);
    }
    return (d * model.unit.value_or(eps)) * dir;
}

Point perturbed_step(const FBContext& ctx, const Point& z, const DeltaModel& model, double eps,
                     long k) {
    Point out = fb_step(ctx, z);
    if (model.kind != DeltaKind::exact) out += draw_perturbation(model, z.size(), eps, k);
    return out;
}

double energy_factor(double theta, double q) { return 1.0 - theta + 2.0 * theta * q * q; }

double assumption4_residual(double theta, double tau, double q) {
    const double big_q = energy_factor(theta, q);
    const double lambda = (1.0 - theta) / theta;
    return big_q * tau * (1.0 + tau) + lambda * tau * (1.0 - tau) - big_q * lambda * (1.0 - tau);
}

double select_tau(double theta, double q) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("select_tau: theta must be in (0, 1]");
    if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("select_tau: q must be in [0, 1)");
    const double big_q = energy_factor(theta, q);
    const double lambda = (1.0 - theta) / theta;
    const double c = big_q * lambda;
    if (c <= 0.0) return 0.0;
    // f(tau) = a tau^2 + b tau - c with f(0) = -c < 0 and f(1) = 2Q > 0, so the
    // feasible set inside [0, 1) is [0, r] for the smallest positive root r.
    const double a = big_q - lambda;
    const double b = big_q + lambda + big_q * lambda;
    const double disc = std::max(b * b + 4.0 * a * c, 0.0);
    double tau = 2.0 * c / (b + std::sqrt(disc));
    // One Newton step polishes the root; then step back to the feasible side.
    const double f = assumption4_residual(theta, tau, q);
    const double fp = 2.0 * a * tau + b;
    if (fp > 0.0) tau -= f / fp;
    while (tau > 0.0 && assumption4_residual(theta, tau, q) > 0.0) {
        tau = std::nextafter(tau, 0.0);
    }
    return std::clamp(tau, 0.0, kTauCap);
}

double post_stop_bound(double eps, double theta, double q) {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("post_stop_bound: theta in (0, 1]");
    if (!(q >= 0.0 && q < 1.0)) throw InvalidArgument("post_stop_bound: q in [0, 1)");
    return eps / (theta * (1.0 - q));
}

double lyapunov_energy(std::span<const Point> history, const Point& u_bar, double theta,
                       double tau, std::size_t k) {
    if (k < 1 || k >= history.size()) {
        throw InvalidArgument("lyapunov_energy: history must contain v^{k-1} and v^k");
    }
    const double lambda = (1.0 - theta) / theta;
    const Point& vk = history[k];
    const Point& vkm1 = history[k - 1];
    return (vk - u_bar).squaredNorm() - tau * (vkm1 - u_bar).squaredNorm() +
           lambda * (1.0 - tau) * (vk - vkm1).squaredNorm();
}

void InnerParams::validate(std::optional<double> q) const {
    if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("InnerParams: theta must be in (0, 1]");
    if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("InnerParams: tau must be in [0, 1)");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("InnerParams: eps must be >= 0");
    if (k_max < 1) throw InvalidArgument("InnerParams: k_max must be >= 1");
    if (delta.kind != DeltaKind::exact && !(delta.bound >= 0.0)) {
        throw InvalidArgument("InnerParams: perturbation bound must be >= 0");
    }
    if (q && assumption4_residual(theta, tau, *q) > 1e-12) {
        throw InvalidArgument("InnerParams: (theta, tau) violate the inertia condition for q");
    }
}

InnerResult ikm_run(const FBContext& ctx, const InnerParams& params, const Point& v0,
                    const TraceOptions& opts) {
    params.validate(ctx.q());
    require_same_dim(v0, ctx.anchor(), "ikm_run");
    if (!all_finite(v0)) throw NonFiniteIterate("ikm_run: starting point is not finite", 0);
    if (opts.reference) require_same_dim(*opts.reference, v0, "ikm_run: reference");

    const double theta = params.theta;
    const double tau = params.tau;
    const double lambda = (1.0 - theta) / theta;

    InnerResult result;
    if (opts.keep_iterates) {
        result.iterates.push_back(v0);
        result.iterates.push_back(v0);
    }

    Point v_prev = v0;
    Point v = v0;
    for (long k = 1;; ++k) {
        Point z = v + tau * (v - v_prev);
        Point t_z = fb_step(ctx, z);
        double delta_norm = 0.0;
        if (params.delta.kind != DeltaKind::exact) {
            const Point delta = draw_perturbation(params.delta, z.size(), params.eps, k);
            delta_norm = delta.norm();
            t_z += delta;
        }
        Point v_next = (1.0 - theta) * z + theta * t_z;
        if (!all_finite(v_next)) throw NonFiniteIterate("ikm_run: iterate became non-finite", k);
        const double residual = (v_next - z).norm();

        if (opts.record) {
            InnerStep step{k, residual, delta_norm, std::nullopt, std::nullopt};
            if (opts.reference) {
                const Point& u = *opts.reference;
                step.dist = (v_next - u).norm();
                step.energy = (v_next - u).squaredNorm() - tau * (v - u).squaredNorm() +
                              lambda * (1.0 - tau) * (v_next - v).squaredNorm();
            }
            result.trace.push_back(step);
        }
        if (opts.keep_iterates) result.iterates.push_back(v_next);

        const bool converged = residual <= params.eps;
        if (converged || k >= params.k_max) {
            result.v_final = std::move(v_next);
            result.z_final = std::move(z);
            result.stop_k = k;
            result.stopped_by = converged ? StopReason::criterion : StopReason::cap;
            return result;
        }
        v_prev = std::move(v);
        v = std::move(v_next);
    }
}

}  // namespace nvi
