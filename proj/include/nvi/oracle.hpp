#pragma once

// Reference solver for the regularized subproblem zer(A + Phi(., w)).
//
// Deliberately shares no code with the forward-backward engine: it rebuilds
// the plain map T(v) = J_{gA}(v - g (F v + beta G v + alpha (v - w))) with
// g = alpha / L^2 from the problem data and runs the unrelaxed, inertia-free,
// exact iteration. Banach's a-posteriori bound |v_{k+1} - u| <= q/(1-q)
// |v_{k+1} - v_k| turns the step length into a certified distance.

#include "nvi/problems.hpp"

#include <optional>

namespace nvi {

struct OracleResult {
    Point point;
    long iterations = 0;
    double q = 0.0;
    /// The step length stalled at the double-precision floor before reaching
    /// tol (1 - q) / q; accuracy is then limited by round-off, not by tol.
    bool rounding_limited = false;
};

inline constexpr long kOracleBudget = 10'000'000;

OracleResult oracle_solve(const ProblemInstance& problem, double alpha, double beta,
                          const Point& anchor, double tol,
                          const std::optional<Point>& start = std::nullopt);

/// Point within tol of the subproblem solution u_{alpha,beta}(anchor).
/// Throws SolverError when the iteration budget is exhausted.
Point oracle_fixed_point(const ProblemInstance& problem, double alpha, double beta,
                         const Point& anchor, double tol);

}  // namespace nvi
