#include "nvi/oracle.hpp"

#include "nvi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nvi {

OracleResult oracle_solve(const ProblemInstance& problem, double alpha, double beta,
                          const Point& anchor, double tol, const std::optional<Point>& start) {
    if (!(tol > 0.0)) throw InvalidArgument("oracle: tol must be positive");
    if (!(alpha > 0.0) || !(beta >= 0.0)) throw InvalidArgument("oracle: need alpha > 0, beta >= 0");
    if (anchor.size() != problem.dim()) throw InvalidArgument("oracle: anchor dimension");

    const double lip = problem.f.lipschitz + beta * problem.g.lipschitz + alpha;
    const double step = alpha / (lip * lip);
    // 1 - step (2 alpha - step L^2) collapses to 1 - alpha^2 / L^2 at this step.
    const double q = std::sqrt(std::max(0.0, 1.0 - (alpha / lip) * (alpha / lip)));

    auto map = [&](const Point& v) -> Point {
        Point drift = problem.f(v) + alpha * (v - anchor);
        if (beta != 0.0) drift += beta * problem.g(v);
        return problem.a(step, v - step * drift);
    };

    OracleResult out;
    out.q = q;
    Point v = start.value_or(problem.domain.center());
    if (q == 0.0) {
        // T is constant; one application lands on the fixed point.
        out.point = map(v);
        out.iterations = 1;
        return out;
    }

    const double target = tol * (1.0 - q) / q;
    long extra = -1;  // countdown once the rounding floor is reached
    for (long k = 1; k <= kOracleBudget; ++k) {
        Point next = map(v);
        if (!next.allFinite()) throw SolverError("oracle: iterate became non-finite");
        const double dv = (next - v).norm();
        v = std::move(next);
        if (dv <= target) {
            out.point = v;
            out.iterations = k;
            return out;
        }
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + v.norm());
        if (extra < 0 && dv <= floor) {
            // Keep contracting long enough to shrink what is left by 1e-6.
            extra = static_cast<long>(std::ceil(std::log(1e-6) / std::log(q)));
            out.rounding_limited = true;
        }
        if (extra == 0) {
            out.point = v;
            out.iterations = k;
            return out;
        }
        if (extra > 0) --extra;
    }
    throw SolverError("oracle: iteration budget of 1e7 exhausted");
}

Point oracle_fixed_point(const ProblemInstance& problem, double alpha, double beta,
                         const Point& anchor, double tol) {
    return oracle_solve(problem, alpha, beta, anchor, tol).point;
}

}  // namespace nvi
