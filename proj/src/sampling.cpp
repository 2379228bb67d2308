#include "nvi/sampling.hpp"

#include <algorithm>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nvi {

namespace {

Point draw_in_box(const BoxSet& box, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Point x(box.dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] = box.lower()[i] + unit(gen) * (box.upper()[i] - box.lower()[i]);
    }
    return x;
}

void accumulate_ratios(const Point& x, const Point& y, const Point& mx, const Point& my,
                       double& min_inner, double& max_norm) {
    const Point dx = x - y;
    const double dx2 = dx.squaredNorm();
    if (dx2 == 0.0) return;
    const Point dm = mx - my;
    min_inner = std::min(min_inner, dm.dot(dx) / dx2);
    max_norm = std::max(max_norm, dm.norm() / std::sqrt(dx2));
}

}  // namespace

std::vector<Point> sample_points(const BoxSet& box, int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) pts.push_back(draw_in_box(box, gen));
    return pts;
}

PointPairs sample_pairs(const BoxSet& box, int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    PointPairs pairs;
    pairs.first.reserve(static_cast<std::size_t>(std::max(n, 0)));
    pairs.second.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) {
        pairs.first.push_back(draw_in_box(box, gen));
        pairs.second.push_back(draw_in_box(box, gen));
    }
    return pairs;
}

RatioExtrema map_ratio_extrema_serial(const std::function<Point(const Point&)>& map,
                                      const PointPairs& pairs) {
    double min_inner = std::numeric_limits<double>::infinity();
    double max_norm = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Point& x = pairs.first[i];
        const Point& y = pairs.second[i];
        accumulate_ratios(x, y, map(x), map(y), min_inner, max_norm);
    }
    return {min_inner, max_norm};
}

RatioExtrema map_ratio_extrema_parallel(const std::function<Point(const Point&)>& map,
                                        const PointPairs& pairs) {
    double min_inner = std::numeric_limits<double>::infinity();
    double max_norm = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(static) reduction(min : min_inner) reduction(max : max_norm)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const Point& x = pairs.first[static_cast<std::size_t>(i)];
        const Point& y = pairs.second[static_cast<std::size_t>(i)];
        accumulate_ratios(x, y, map(x), map(y), min_inner, max_norm);
    }
    return {min_inner, max_norm};
}

double max_over_serial(const std::function<double(const Point&)>& f,
                       const std::vector<Point>& points) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) best = std::max(best, f(p));
    return best;
}

double max_over_parallel(const std::function<double(const Point&)>& f,
                         const std::vector<Point>& points) {
    double best = -std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) reduction(max : best)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        best = std::max(best, f(points[static_cast<std::size_t>(i)]));
    }
    return best;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace nvi
