#include "nvi/operators.hpp"

#include "nvi/sampling.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace nvi {

void require_same_dim(const Point& a, const Point& b, const char* what) {
    if (a.size() != b.size()) {
        throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
}

bool all_finite(const Point& x) { return x.allFinite(); }

BoxSet::BoxSet(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    require_same_dim(lower_, upper_, "BoxSet");
    if (lower_.size() < 1) throw InvalidArgument("BoxSet: dimension must be >= 1");
    if (!all_finite(lower_) || !all_finite(upper_)) {
        throw InvalidArgument("BoxSet: bounds must be finite");
    }
    if ((lower_.array() > upper_.array()).any()) {
        throw InvalidArgument("BoxSet: lower bound exceeds upper bound");
    }
}

BoxSet BoxSet::cube(Eigen::Index dim, double lo, double hi) {
    return BoxSet(Point::Constant(dim, lo), Point::Constant(dim, hi));
}

bool BoxSet::contains(const Point& x, double tol) const {
    if (x.size() != dim()) return false;
    return ((x.array() >= lower_.array() - tol) && (x.array() <= upper_.array() + tol)).all();
}

Point project_box(const Point& x, const BoxSet& box) {
    require_same_dim(x, box.lower(), "project_box");
    return x.cwiseMax(box.lower()).cwiseMin(box.upper());
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    const Matrix gram = m.transpose() * m;
    // Ones plus a ramp, so the start is not orthogonal to a structured top vector.
    Point x = Point::Ones(gram.cols()) + Point::LinSpaced(gram.cols(), 0.0, 0.5);
    x.normalize();
    double estimate = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Point y = gram * x;
        const double next = y.norm();
        if (next == 0.0) return 0.0;
        x = y / next;
        const bool done = std::abs(next - estimate) <= 1e-12 * next;
        estimate = next;
        if (done) break;
    }
    return std::sqrt(estimate);
}

LipschitzMap identity_map(double lipschitz) {
    return {[](const Point& x) -> Point { return x; }, lipschitz};
}

LipschitzMap zero_map() {
    return {[](const Point& x) -> Point { return Point::Zero(x.size()); }, 0.0};
}

LipschitzMap affine_map(Matrix m, Point b) {
    if (m.rows() != b.size()) throw InvalidArgument("affine_map: rows(M) != dim(b)");
    const double lip = spectral_norm(m);
    return {[m = std::move(m), b = std::move(b)](const Point& x) -> Point {
                if (x.size() != m.cols()) throw InvalidArgument("affine_map: dimension mismatch");
                return m * x + b;
            },
            lip};
}

Point resolvent_normal_cone(const BoxSet& box, double gamma, const Point& x) {
    if (!(gamma > 0.0)) throw InvalidArgument("resolvent_normal_cone: gamma must be positive");
    return project_box(x, box);
}

ResolventMap normal_cone_resolvent(const BoxSet& box) {
    return {[box](double gamma, const Point& x) { return resolvent_normal_cone(box, gamma, x); },
            box};
}

ResolventMap identity_resolvent() {
    return {[](double, const Point& x) -> Point { return x; }, std::nullopt};
}

PhiParams::PhiParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InvalidArgument("PhiParams: alpha must be positive");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw InvalidArgument("PhiParams: beta must be nonnegative");
    }
}

Point eval_phi(const PhiParams& params, const LipschitzMap& f, const LipschitzMap& g,
               const Point& v, const Point& w) {
    require_same_dim(v, w, "eval_phi");
    Point out = f(v);
    require_same_dim(out, v, "eval_phi: F(v)");
    if (params.beta != 0.0) {
        const Point gv = g(v);
        require_same_dim(gv, v, "eval_phi: G(v)");
        out += params.beta * gv;
    }
    out += params.alpha * (v - w);
    return out;
}

double lipschitz_bound(const PhiParams& params, double lip_f, double lip_g) {
    return lip_f + params.beta * lip_g + params.alpha;
}

MonotonicityReport check_monotone(const LipschitzMap& map, const BoxSet& box, int n_samples,
                                  std::uint64_t seed, Execution exec) {
    if (n_samples < 1) throw InvalidArgument("check_monotone: n_samples must be >= 1");
    const PointPairs pairs = sample_pairs(box, n_samples, seed);
    const RatioExtrema ext = map_ratio_extrema(map.eval, pairs, exec);

    MonotonicityReport report;
    report.n_samples = n_samples;
    report.min_monotone_ratio = ext.min_inner;
    report.max_lipschitz_ratio = ext.max_norm;
    report.monotone_violation = ext.min_inner < -kSamplingTolerance;
    report.lipschitz_violation = ext.max_norm > map.lipschitz * (1.0 + kSamplingTolerance);
    return report;
}

ResolventReport check_resolvent(const ResolventMap& a, double gamma, const BoxSet& region,
                                int n_samples, std::uint64_t seed, Execution exec) {
    if (n_samples < 1) throw InvalidArgument("check_resolvent: n_samples must be >= 1");
    const Point half = 0.5 * (region.upper() - region.lower());
    const BoxSet wide(region.lower() - half, region.upper() + half);
    const PointPairs pairs = sample_pairs(wide, n_samples, seed);

    std::vector<Point> index(pairs.size(), Point::Zero(1));
    for (std::size_t i = 0; i < pairs.size(); ++i) index[i][0] = static_cast<double>(i);
    auto excess = [&](const Point& idx) {
        const auto i = static_cast<std::size_t>(idx[0]);
        const Point& x = pairs.first[i];
        const Point& y = pairs.second[i];
        const Point dj = a(gamma, x) - a(gamma, y);
        return dj.squaredNorm() - dj.dot(x - y);
    };
    ResolventReport report;
    report.n_samples = n_samples;
    report.max_excess = exec == Execution::serial ? max_over_serial(excess, index)
                                                  : max_over_parallel(excess, index);
    return report;
}

}  // namespace nvi
