#include "nvi/problems.hpp"

#include <cmath>
#include <utility>

namespace nvi {

ProblemInstance make_zero_sum_game() {
    BoxSet box(Point{{11.0, 10.0}}, Point{{60.0, 50.0}});
    Matrix m{{0.0, -0.1}, {0.1, 0.0}};
    LipschitzMap f{[m](const Point& x) -> Point {
                       require_same_dim(x, Point(2), "zero_sum_game F");
                       return m * x + Point{{1.0, 0.0}};
                   },
                   0.1};
    return ProblemInstance{"zero_sum_game", normal_cone_resolvent(box), std::move(f),
                           identity_map(1.0), box, Point{{11.0, 10.0}}, false};
}

ProblemInstance make_simple_bilevel(const Matrix& b, const Point& c, const BoxSet& box) {
    if (b.rows() != c.size()) throw InvalidArgument("make_simple_bilevel: rows(B) != dim(c)");
    if (b.cols() != box.dim()) throw InvalidArgument("make_simple_bilevel: cols(B) != dim(box)");

    Point least_norm = b.completeOrthogonalDecomposition().solve(c);
    // Guard against round-off placing a boundary minimizer a hair outside.
    if (!box.contains(least_norm, 1e-12 * (1.0 + least_norm.lpNorm<Eigen::Infinity>()))) {
        throw InvalidArgument(
            "make_simple_bilevel: box does not contain the least-norm lower-level minimizer");
    }
    least_norm = project_box(least_norm, box);

    const double sigma = spectral_norm(b);
    LipschitzMap f{[b, c](const Point& v) -> Point {
                       if (v.size() != b.cols()) throw InvalidArgument("simple_bilevel F: dimension");
                       return b.transpose() * (b * v - c);
                   },
                   sigma * sigma};
    return ProblemInstance{"simple_bilevel", normal_cone_resolvent(box), std::move(f),
                           identity_map(1.0), box, std::move(least_norm), false};
}

ProblemInstance make_saddle_point_bilevel(LipschitzMap f_grad, const Matrix& l, ProxMap prox_r,
                                          LipschitzMap g_grad, std::optional<BoxSet> region) {
    const Eigen::Index n = l.rows();
    const Eigen::Index m = l.cols();
    if (n < 1 || m < 1) throw InvalidArgument("make_saddle_point_bilevel: empty coupling matrix");
    const Eigen::Index dim = n + m;
    if (region && region->dim() != dim) {
        throw InvalidArgument("make_saddle_point_bilevel: region dimension != n + m");
    }

    const double lip_f = spectral_norm(l) + f_grad.lipschitz;
    LipschitzMap f{[l, n, m, grad = std::move(f_grad.eval)](const Point& z) -> Point {
                       if (z.size() != n + m) {
                           throw InvalidArgument("saddle F: dimension mismatch");
                       }
                       const auto v = z.head(n);
                       const auto w = z.tail(m);
                       Point out(n + m);
                       out.head(n) = l * w + grad(v);
                       out.tail(m) = -l.transpose() * v;
                       return out;
                   },
                   lip_f};

    ResolventMap a{[n, m, prox = std::move(prox_r)](double gamma, const Point& z) -> Point {
                       if (!(gamma > 0.0)) throw InvalidArgument("saddle resolvent: gamma <= 0");
                       if (z.size() != n + m) {
                           throw InvalidArgument("saddle resolvent: dimension mismatch");
                       }
                       Point out = z;
                       const Point w = z.tail(m);
                       // Moreau: prox_{gamma r*}(w) = w - gamma prox_{r / gamma}(w / gamma)
                       out.tail(m) = w - gamma * prox(1.0 / gamma, w / gamma);
                       return out;
                   },
                   std::nullopt};

    LipschitzMap g{[n, m, grad = std::move(g_grad.eval)](const Point& z) -> Point {
                       if (z.size() != n + m) throw InvalidArgument("saddle G: dimension mismatch");
                       Point out = Point::Zero(n + m);
                       out.head(n) = grad(z.head(n));
                       return out;
                   },
                   g_grad.lipschitz};

    return ProblemInstance{"saddle_point", std::move(a), std::move(f), std::move(g),
                           region.value_or(BoxSet::cube(dim, -10.0, 10.0)), std::nullopt, true};
}

ProblemInstance make_affine_contraction(double skew) {
    if (!(skew >= 0.0)) throw InvalidArgument("make_affine_contraction: skew must be >= 0");
    Matrix j{{0.0, -skew}, {skew, 0.0}};
    LipschitzMap f{[j](const Point& x) -> Point {
                       require_same_dim(x, Point(2), "affine_contraction F");
                       return j * x;
                   },
                   skew};
    return ProblemInstance{"affine_contraction", identity_resolvent(), std::move(f), zero_map(),
                           BoxSet::cube(2, -10.0, 10.0), std::nullopt, true};
}

double affine_contraction_stepsize(double q, double skew) {
    // alpha = 1, beta = 0, L = 1 + skew: smaller root of L^2 g^2 - 2 g + (1 - q^2) = 0.
    const double lip = 1.0 + skew;
    const double disc = 1.0 - lip * lip * (1.0 - q * q);
    if (!(q >= 0.0 && q < 1.0) || disc < 0.0) {
        throw InvalidArgument("affine_contraction_stepsize: q not attainable for this skew");
    }
    return (1.0 - std::sqrt(disc)) / (lip * lip);
}

std::optional<Point> analytic_solution(const ProblemInstance& problem) { return problem.solution; }

std::vector<std::string> problem_names() {
    return {"zero_sum_game", "simple_bilevel", "saddle_point", "affine_contraction"};
}

ProblemInstance make_problem(const std::string& name) {
    if (name == "zero_sum_game" || name == "game") return make_zero_sum_game();
    if (name == "simple_bilevel") {
        return make_simple_bilevel(Matrix{{1.0, 0.0}, {0.0, 0.0}}, Point{{1.0, 0.0}},
                                   BoxSet::cube(2, -2.0, 2.0));
    }
    if (name == "saddle_point") {
        LipschitzMap f_grad{[](const Point& v) -> Point { return v; }, 1.0};
        ProxMap clamp = [](double, const Point& x) -> Point {
            return x.cwiseMax(-1.0).cwiseMin(1.0);
        };
        return make_saddle_point_bilevel(std::move(f_grad), Matrix{{1.0}}, std::move(clamp),
                                         identity_map(1.0), BoxSet::cube(2, -3.0, 3.0));
    }
    if (name == "affine_contraction") return make_affine_contraction();
    throw InvalidArgument("unknown problem '" + name + "'");
}

}  // namespace nvi
