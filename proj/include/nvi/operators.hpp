#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace nvi {

/// Element of the (finite-dimensional) Hilbert space.
using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised on violated preconditions: mismatched dimensions, parameters
/// outside their admissible window, ill-formed problem data.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void require_same_dim(const Point& a, const Point& b, const char* what);
bool all_finite(const Point& x);

/// Bounded axis-aligned box [lower, upper].
class BoxSet {
public:
    BoxSet(Point lower, Point upper);

    /// [lo, hi]^dim
    static BoxSet cube(Eigen::Index dim, double lo, double hi);

    const Point& lower() const { return lower_; }
    const Point& upper() const { return upper_; }
    Eigen::Index dim() const { return lower_.size(); }
    Point center() const { return 0.5 * (lower_ + upper_); }
    bool contains(const Point& x, double tol = 0.0) const;

private:
    Point lower_;
    Point upper_;
};

/// Componentwise clamp of x into the box.
Point project_box(const Point& x, const BoxSet& box);

/// Single-valued monotone map with a declared Lipschitz constant.
struct LipschitzMap {
    std::function<Point(const Point&)> eval;
    double lipschitz = 0.0;

    Point operator()(const Point& x) const { return eval(x); }
};

/// Largest singular value by power iteration on M^T M (relative tolerance
/// 1e-12, at most 10000 iterations).
double spectral_norm(const Matrix& m);

LipschitzMap identity_map(double lipschitz = 1.0);
LipschitzMap zero_map();
/// x -> M x + b, declared constant is the spectral norm of M.
LipschitzMap affine_map(Matrix m, Point b);

/// Maximally monotone operator A, represented by (gamma, x) -> J_{gamma A}(x).
struct ResolventMap {
    std::function<Point(double, const Point&)> resolvent;
    /// dom(A) when it is a box; empty means unbounded.
    std::optional<BoxSet> domain;

    Point operator()(double gamma, const Point& x) const { return resolvent(gamma, x); }
};

/// Resolvent of the normal cone of a box: the projection, for every gamma.
Point resolvent_normal_cone(const BoxSet& box, double gamma, const Point& x);
ResolventMap normal_cone_resolvent(const BoxSet& box);
/// A = 0.
ResolventMap identity_resolvent();

/// Proximal (alpha > 0) and Tikhonov (beta >= 0) weights of
/// Phi(v, w) = F(v) + beta G(v) + alpha (v - w).
struct PhiParams {
    double alpha;
    double beta;

    PhiParams(double alpha, double beta);
};

Point eval_phi(const PhiParams& params, const LipschitzMap& f, const LipschitzMap& g,
               const Point& v, const Point& w);

/// Lipschitz constant of Phi(., w): L_F + beta L_G + alpha.
double lipschitz_bound(const PhiParams& params, double lip_f, double lip_g);

enum class Execution { serial, parallel };

struct MonotonicityReport {
    /// min over sampled pairs of <F(x)-F(y), x-y> / |x-y|^2
    double min_monotone_ratio = 0.0;
    /// max over sampled pairs of |F(x)-F(y)| / |x-y|
    double max_lipschitz_ratio = 0.0;
    bool monotone_violation = false;
    bool lipschitz_violation = false;
    int n_samples = 0;

    bool ok() const { return !monotone_violation && !lipschitz_violation; }
};

inline constexpr double kSamplingTolerance = 1e-9;

/// Samples point pairs uniformly in the box and checks monotonicity and the
/// declared Lipschitz constant.
MonotonicityReport check_monotone(const LipschitzMap& map, const BoxSet& box, int n_samples,
                                  std::uint64_t seed, Execution exec = Execution::parallel);

struct ResolventReport {
    /// max over sampled pairs of |Jx-Jy|^2 - <Jx-Jy, x-y>
    double max_excess = 0.0;
    int n_samples = 0;

    bool ok() const { return max_excess <= kSamplingTolerance; }
};

/// Samples pairs in `region` widened by half its width on every side (so
/// points outside a box domain are exercised) and checks firm
/// nonexpansiveness of J_{gamma A}.
ResolventReport check_resolvent(const ResolventMap& a, double gamma, const BoxSet& region,
                                int n_samples, std::uint64_t seed,
                                Execution exec = Execution::parallel);

}  // namespace nvi
