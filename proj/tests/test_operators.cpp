#include "nvi/operators.hpp"
#include "nvi/problems.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using nvi::BoxSet;
using nvi::Point;

const BoxSet kGameBox(Point{{11.0, 10.0}}, Point{{60.0, 50.0}});

TEST(BoxSet, RejectsBadBounds) {
    EXPECT_THROW(BoxSet(Point{{1.0, 0.0}}, Point{{0.0, 1.0}}), nvi::InvalidArgument);
    EXPECT_THROW(BoxSet(Point{{0.0}}, Point{{std::numeric_limits<double>::infinity()}}),
                 nvi::InvalidArgument);
    EXPECT_THROW(BoxSet(Point{{0.0, 0.0}}, Point{{1.0}}), nvi::InvalidArgument);
    EXPECT_THROW(BoxSet(Point(0), Point(0)), nvi::InvalidArgument);
}

TEST(BoxSet, CubeAndCenter) {
    const BoxSet b = BoxSet::cube(3, -2.0, 4.0);
    EXPECT_EQ(b.dim(), 3);
    EXPECT_EQ(b.center(), Point::Constant(3, 1.0));
    EXPECT_TRUE(b.contains(Point::Constant(3, 4.0)));
    EXPECT_FALSE(b.contains(Point::Constant(3, 4.1)));
    EXPECT_TRUE(b.contains(Point::Constant(3, 4.1), 0.2));
}

TEST(ProjectBox, Examples) {
    EXPECT_EQ(nvi::project_box(Point{{0.0, 0.0}}, kGameBox), (Point{{11.0, 10.0}}));
    EXPECT_EQ(nvi::project_box(Point{{30.0, 20.0}}, kGameBox), (Point{{30.0, 20.0}}));
    EXPECT_EQ(nvi::project_box(Point{{100.0, 5.0}}, kGameBox), (Point{{60.0, 10.0}}));
}

TEST(ProjectBox, DimensionMismatch) {
    EXPECT_THROW(nvi::project_box(Point{{1.0, 2.0, 3.0}}, kGameBox), nvi::InvalidArgument);
}

TEST(ProjectBox, IdempotentAndNonexpansive) {
    std::mt19937_64 gen(7);
    const BoxSet wide = BoxSet::cube(2, -100.0, 150.0);
    for (int i = 0; i < 2000; ++i) {
        const Point x = nvi::testing::uniform_point(gen, wide);
        const Point y = nvi::testing::uniform_point(gen, wide);
        const Point px = nvi::project_box(x, kGameBox);
        EXPECT_TRUE(kGameBox.contains(px));
        EXPECT_EQ(nvi::project_box(px, kGameBox), px);
        EXPECT_LE((px - nvi::project_box(y, kGameBox)).norm(), (x - y).norm());
    }
}

TEST(ResolventNormalCone, EqualsProjectionForEveryGamma) {
    EXPECT_EQ(nvi::resolvent_normal_cone(kGameBox, 1.0, Point{{0.0, 0.0}}), (Point{{11.0, 10.0}}));
    EXPECT_EQ(nvi::resolvent_normal_cone(kGameBox, 0.2268, Point{{30.0, 20.0}}),
              (Point{{30.0, 20.0}}));
    EXPECT_EQ(nvi::resolvent_normal_cone(kGameBox, 10.0, Point{{100.0, 5.0}}),
              (Point{{60.0, 10.0}}));
}

TEST(ResolventNormalCone, Errors) {
    EXPECT_THROW(nvi::resolvent_normal_cone(kGameBox, 0.0, Point{{0.0, 0.0}}), nvi::InvalidArgument);
    EXPECT_THROW(nvi::resolvent_normal_cone(kGameBox, 1.0, Point{{0.0}}), nvi::InvalidArgument);
}

TEST(EvalPhi, Examples) {
    const auto game = nvi::make_zero_sum_game();
    const nvi::PhiParams p11(1.0, 1.0);
    const Point r1 = nvi::eval_phi(p11, game.f, game.g, Point{{10.0, 10.0}}, Point{{0.0, 0.0}});
    EXPECT_NEAR(r1[0], 20.0, 1e-13);
    EXPECT_NEAR(r1[1], 21.0, 1e-13);

    const nvi::PhiParams p10(1.0, 0.0);
    const Point v{{25.0, 17.0}};
    EXPECT_EQ(nvi::eval_phi(p10, game.f, game.g, v, v), game.f(v));

    const Point r3 = nvi::eval_phi(p11, game.f, game.g, Point{{0.0, 0.0}}, Point{{0.0, 0.0}});
    EXPECT_EQ(r3, (Point{{1.0, 0.0}}));
}

TEST(EvalPhi, Errors) {
    const auto game = nvi::make_zero_sum_game();
    EXPECT_THROW(nvi::PhiParams(0.0, 1.0), nvi::InvalidArgument);
    EXPECT_THROW(nvi::PhiParams(1.0, -0.1), nvi::InvalidArgument);
    EXPECT_THROW(nvi::eval_phi(nvi::PhiParams(1.0, 0.0), game.f, game.g, Point{{1.0, 2.0}},
                               Point{{1.0, 2.0, 3.0}}),
                 nvi::InvalidArgument);
}

TEST(LipschitzBound, Examples) {
    EXPECT_DOUBLE_EQ(nvi::lipschitz_bound(nvi::PhiParams(1.0, 1.0), 0.1, 1.0), 2.1);
    EXPECT_DOUBLE_EQ(nvi::lipschitz_bound(nvi::PhiParams(1.0, 0.0), 0.0, 5.0), 1.0);
    EXPECT_NEAR(nvi::lipschitz_bound(nvi::PhiParams(10.0, 0.683), 0.1, 1.0), 10.783, 1e-12);
}

TEST(EvalPhi, StrongMonotoneLipschitzAffineInAnchor) {
    const auto game = nvi::make_zero_sum_game();
    std::mt19937_64 gen(11);
    for (double alpha : {0.1, 1.0, 10.0}) {
        for (double beta : {0.0, 0.683, 1.0}) {
            const nvi::PhiParams p(alpha, beta);
            const double lip = nvi::lipschitz_bound(p, game.f.lipschitz, game.g.lipschitz);
            for (int i = 0; i < 300; ++i) {
                const Point v = nvi::testing::uniform_point(gen, kGameBox);
                const Point v2 = nvi::testing::uniform_point(gen, kGameBox);
                const Point w = nvi::testing::uniform_point(gen, kGameBox);
                const Point w2 = nvi::testing::uniform_point(gen, kGameBox);
                const Point d = nvi::eval_phi(p, game.f, game.g, v, w) -
                                nvi::eval_phi(p, game.f, game.g, v2, w);
                const double dv2 = (v - v2).squaredNorm();
                EXPECT_GE(d.dot(v - v2), alpha * dv2 - 1e-9);
                EXPECT_LE(d.norm(), lip * std::sqrt(dv2) * (1.0 + 1e-9));
                const Point dw = nvi::eval_phi(p, game.f, game.g, v, w) -
                                 nvi::eval_phi(p, game.f, game.g, v, w2);
                EXPECT_LE((dw - alpha * (w2 - w)).norm(), 1e-12 * (1.0 + alpha * 100.0));
            }
        }
    }
}

TEST(SpectralNorm, MatchesSvd) {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        nvi::Matrix m(4, 3);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(gen);
        const double svd = Eigen::JacobiSVD<nvi::Matrix>(m).singularValues()[0];
        EXPECT_NEAR(nvi::spectral_norm(m), svd, 1e-9 * svd);
    }
    EXPECT_EQ(nvi::spectral_norm(nvi::Matrix::Zero(2, 2)), 0.0);
    EXPECT_NEAR(nvi::spectral_norm(nvi::Matrix{{0.0, -0.1}, {0.1, 0.0}}), 0.1, 1e-15);
}

TEST(CheckMonotone, GameOperatorIsSkew) {
    const auto game = nvi::make_zero_sum_game();
    const auto r = nvi::check_monotone(game.f, game.domain, 1000, 0);
    EXPECT_TRUE(r.ok());
    EXPECT_LE(std::abs(r.min_monotone_ratio), 1e-12);
    EXPECT_LE(r.max_lipschitz_ratio, 0.1 * (1.0 + 1e-12));
    EXPECT_EQ(r.n_samples, 1000);
}

TEST(CheckMonotone, IdentityMap) {
    const auto r = nvi::check_monotone(nvi::identity_map(1.0), kGameBox, 1000, 1);
    EXPECT_TRUE(r.ok());
    EXPECT_NEAR(r.min_monotone_ratio, 1.0, 1e-12);

    const auto bad = nvi::check_monotone(nvi::identity_map(0.5), kGameBox, 1000, 1);
    EXPECT_TRUE(bad.lipschitz_violation);
    EXPECT_FALSE(bad.monotone_violation);
    EXPECT_FALSE(bad.ok());
}

TEST(CheckMonotone, FlagsNonMonotoneMap) {
    const auto neg = nvi::affine_map(-nvi::Matrix::Identity(2, 2), Point::Zero(2));
    const auto r = nvi::check_monotone(neg, kGameBox, 100, 2);
    EXPECT_TRUE(r.monotone_violation);
    EXPECT_THROW(nvi::check_monotone(neg, kGameBox, 0, 2), nvi::InvalidArgument);
}

TEST(CheckResolvent, ProjectionIsFirmlyNonexpansive) {
    const auto r = nvi::check_resolvent(nvi::normal_cone_resolvent(kGameBox), 1.0, kGameBox, 2000, 5);
    EXPECT_TRUE(r.ok());
    const auto id = nvi::check_resolvent(nvi::identity_resolvent(), 0.3, kGameBox, 500, 5);
    EXPECT_TRUE(id.ok());
}

TEST(CheckResolvent, FlagsExpansiveMap) {
    nvi::ResolventMap doubling{[](double, const Point& x) -> Point { return 2.0 * x; }, std::nullopt};
    EXPECT_FALSE(nvi::check_resolvent(doubling, 1.0, kGameBox, 50, 5).ok());
}

}  // namespace
