#pragma once

#include "nvi/operators.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nvi {

/// Nested problem: solve VI(G, zer(A + F)).
struct ProblemInstance {
    std::string name;
    ResolventMap a;
    LipschitzMap f;
    LipschitzMap g;
    /// dom(A) for box-constrained instances; otherwise the region used for
    /// sampling and for the oracle's starting point.
    BoxSet domain;
    std::optional<Point> solution;
    /// dom(A) is unbounded (the dual block of the saddle-point instance).
    bool theory_unbounded = false;

    Eigen::Index dim() const { return domain.dim(); }
};

/// Two-player zero-sum game on [11, 60] x [10, 50] with the least-norm
/// selection 0.5 |x|^2 on top. Solution (11, 10).
ProblemInstance make_zero_sum_game();

/// Lower level min 0.5 |B v - c|^2 over the box, upper level 0.5 |v|^2.
/// Throws InvalidArgument when the box does not contain the least-norm
/// minimizer pinv(B) c.
ProblemInstance make_simple_bilevel(const Matrix& b, const Point& c, const BoxSet& box);

/// (lambda, x) -> prox_{lambda r}(x).
using ProxMap = std::function<Point(double, const Point&)>;

/// Saddle-point reformulation of min_v f(v) + r(L^T v) on the product space
/// z = (v, w): F(v, w) = [L w + grad f(v); -L^T v], A = {0} x d r*, with the
/// dual resolvent evaluated through the Moreau identity. `region` is the
/// sampling box (default [-10, 10]^(n+m)).
ProblemInstance make_saddle_point_bilevel(LipschitzMap f_grad, const Matrix& l, ProxMap prox_r,
                                          LipschitzMap g_grad,
                                          std::optional<BoxSet> region = std::nullopt);

/// Affine contraction test instance: A = 0 on R^2, F(v) = s J v (J the 90
/// degree rotation), G = 0, solved with alpha = 1, beta = 0. The step size
/// returned by affine_contraction_stepsize makes the contraction factor
/// equal to `q` exactly; the subproblem solution at anchor w is
/// (I + s J)^{-1} w.
ProblemInstance make_affine_contraction(double skew = 0.1);
double affine_contraction_stepsize(double q, double skew = 0.1);

std::optional<Point> analytic_solution(const ProblemInstance& problem);

/// Names accepted by make_problem.
std::vector<std::string> problem_names();
/// Named benchmark instance with default parameters.
ProblemInstance make_problem(const std::string& name);

}  // namespace nvi
