#include "nvi/fb_engine.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nvi {

double contraction_factor(double alpha, double lipschitz, double gamma) {
    if (!(alpha > 0.0) || !(lipschitz > 0.0)) {
        throw InvalidArgument("contraction_factor: alpha and L must be positive");
    }
    if (!(gamma > 0.0) || !(gamma < 2.0 * alpha / (lipschitz * lipschitz))) {
        throw InvalidArgument("invalid step size: gamma must lie in (0, 2 alpha / L^2)");
    }
    const double s = 1.0 - gamma * (2.0 * alpha - gamma * lipschitz * lipschitz);
    return std::sqrt(std::max(s, 0.0));
}

double default_stepsize(double alpha, double lipschitz) {
    if (!(lipschitz > 0.0)) throw InvalidArgument("default_stepsize: L must be positive");
    return alpha / (lipschitz * lipschitz);
}

FBContext::FBContext(ResolventMap a, LipschitzMap f, LipschitzMap g, PhiParams phi, Point anchor,
                     std::optional<double> gamma)
    : a_(std::move(a)),
      f_(std::move(f)),
      g_(std::move(g)),
      phi_(phi),
      anchor_(std::move(anchor)),
      lipschitz_(lipschitz_bound(phi_, f_.lipschitz, g_.lipschitz)),
      gamma_(gamma.value_or(default_stepsize(phi_.alpha, lipschitz_))),
      q_(contraction_factor(phi_.alpha, lipschitz_, gamma_)) {
    if (!all_finite(anchor_)) throw InvalidArgument("FBContext: anchor must be finite");
}

Point FBContext::eval_phi(const Point& v) const { return nvi::eval_phi(phi_, f_, g_, v, anchor_); }

Point fb_step(const FBContext& ctx, const Point& v) {
    require_same_dim(v, ctx.anchor(), "fb_step");
    return ctx.resolvent()(ctx.gamma(), v - ctx.gamma() * ctx.eval_phi(v));
}

Point merit(const FBContext& ctx, const Point& v) { return (v - fb_step(ctx, v)) / ctx.gamma(); }

double distance_bound(const FBContext& ctx, double merit_norm) {
    if (!(merit_norm >= 0.0)) throw InvalidArgument("distance_bound: merit norm must be >= 0");
    return (1.0 + ctx.gamma() * ctx.lipschitz()) / ctx.phi().alpha * merit_norm;
}

Point vi_residual(const ResolventMap& a, const LipschitzMap& f, double gamma, const Point& x) {
    return x - a(gamma, x - gamma * f(x));
}

}  // namespace nvi
