#pragma once

// Data-parallel sampling kernels. Each kernel has a serial reference and an
// OpenMP variant; both see the same pre-generated samples, and min/max
// reductions are order independent, so the two agree bit for bit.

#include "nvi/operators.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace nvi {

/// Uniform points in a box, generated serially from one seeded engine.
std::vector<Point> sample_points(const BoxSet& box, int n, std::uint64_t seed);

struct PointPairs {
    std::vector<Point> first;
    std::vector<Point> second;

    std::size_t size() const { return first.size(); }
};

PointPairs sample_pairs(const BoxSet& box, int n, std::uint64_t seed);

struct RatioExtrema {
    double min_inner = 0.0;  // min <M(x)-M(y), x-y> / |x-y|^2
    double max_norm = 0.0;   // max |M(x)-M(y)| / |x-y|
};

RatioExtrema map_ratio_extrema_serial(const std::function<Point(const Point&)>& map,
                                      const PointPairs& pairs);
RatioExtrema map_ratio_extrema_parallel(const std::function<Point(const Point&)>& map,
                                        const PointPairs& pairs);

inline RatioExtrema map_ratio_extrema(const std::function<Point(const Point&)>& map,
                                      const PointPairs& pairs, Execution exec) {
    return exec == Execution::serial ? map_ratio_extrema_serial(map, pairs)
                                     : map_ratio_extrema_parallel(map, pairs);
}

/// max over i of f(points[i]); -inf for an empty set.
double max_over_serial(const std::function<double(const Point&)>& f,
                       const std::vector<Point>& points);
double max_over_parallel(const std::function<double(const Point&)>& f,
                         const std::vector<Point>& points);

int max_threads();

}  // namespace nvi
