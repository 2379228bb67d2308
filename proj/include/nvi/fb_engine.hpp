#pragma once

#include "nvi/operators.hpp"

#include <optional>

namespace nvi {

/// q = sqrt(1 - gamma (2 alpha - gamma L^2)), the Lipschitz modulus of the
/// forward-backward map when Phi is alpha-strongly monotone and L-Lipschitz.
/// Throws InvalidArgument unless 0 < gamma < 2 alpha / L^2.
double contraction_factor(double alpha, double lipschitz, double gamma);

/// alpha / L^2, the maximizer of gamma (2 alpha - gamma L^2).
double default_stepsize(double alpha, double lipschitz);

/// Everything one forward-backward map T_gamma(.) = J_{gamma A}(. - gamma Phi(., w)) needs.
class FBContext {
public:
    /// gamma defaults to default_stepsize(alpha, L); an override must lie in
    /// (0, 2 alpha / L^2).
    FBContext(ResolventMap a, LipschitzMap f, LipschitzMap g, PhiParams phi, Point anchor,
              std::optional<double> gamma = std::nullopt);

    const ResolventMap& resolvent() const { return a_; }
    const LipschitzMap& f() const { return f_; }
    const LipschitzMap& g() const { return g_; }
    const PhiParams& phi() const { return phi_; }
    const Point& anchor() const { return anchor_; }
    double gamma() const { return gamma_; }
    double lipschitz() const { return lipschitz_; }
    double q() const { return q_; }
    Eigen::Index dim() const { return anchor_.size(); }

    Point eval_phi(const Point& v) const;

private:
    ResolventMap a_;
    LipschitzMap f_;
    LipschitzMap g_;
    PhiParams phi_;
    Point anchor_;
    double lipschitz_;
    double gamma_;
    double q_;
};

/// J_{gamma A}(v - gamma Phi(v, w)).
Point fb_step(const FBContext& ctx, const Point& v);

/// (v - fb_step(v)) / gamma; zero exactly at the subproblem solution.
Point merit(const FBContext& ctx, const Point& v);

/// Upper bound (1 + gamma L) / alpha * |merit| on the distance to the
/// subproblem solution.
double distance_bound(const FBContext& ctx, double merit_norm);

/// Fixed-point residual x - J_{gamma A}(x - gamma F(x)) of the lower-level
/// inclusion 0 in A x + F x (no regularization).
Point vi_residual(const ResolventMap& a, const LipschitzMap& f, double gamma, const Point& x);

}  // namespace nvi
