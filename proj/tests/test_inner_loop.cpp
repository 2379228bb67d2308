#include "nvi/errors.hpp"
#include "nvi/inner_loop.hpp"
#include "nvi/problems.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

namespace {

using nvi::Point;

nvi::FBContext game_context(double alpha, double beta, const Point& w) {
    const auto game = nvi::make_zero_sum_game();
    return nvi::FBContext(game.a, game.f, game.g, nvi::PhiParams(alpha, beta), w);
}

constexpr double kSkew = 0.1;

nvi::FBContext contraction_context(const Point& w, double q = 0.5) {
    const auto p = nvi::make_affine_contraction(kSkew);
    return nvi::FBContext(p.a, p.f, p.g, nvi::PhiParams(1.0, 0.0), w,
                          nvi::affine_contraction_stepsize(q, kSkew));
}

Point contraction_solution(const Point& w) {
    const nvi::Matrix m{{1.0, -kSkew}, {kSkew, 1.0}};
    return m.partialPivLu().solve(w);
}

TEST(InertiaCondition, ResidualExamples) {
    EXPECT_DOUBLE_EQ(nvi::assumption4_residual(0.5, 0.0, 0.5), -0.75);
    EXPECT_NEAR(nvi::assumption4_residual(0.5, 0.3096, 0.5), 0.0, 1e-4);
    for (double tau : {0.1, 0.5, 0.9}) {
        const double big_q = nvi::energy_factor(1.0, 0.5);
        EXPECT_DOUBLE_EQ(nvi::assumption4_residual(1.0, tau, 0.5), big_q * tau * (1.0 + tau));
        EXPECT_GT(nvi::assumption4_residual(1.0, tau, 0.5), 0.0);
    }
}

TEST(InertiaCondition, EnergyFactor) {
    EXPECT_DOUBLE_EQ(nvi::energy_factor(0.5, 0.5), 0.75);
    EXPECT_DOUBLE_EQ(nvi::energy_factor(1.0, 0.0), 0.0);
    EXPECT_GT(nvi::energy_factor(0.5, 0.879337), 1.0);
}

TEST(SelectTau, ClosedFormRoot) {
    // Root of tau^2 - 10 tau + 3 = 0.
    EXPECT_NEAR(nvi::select_tau(0.5, 0.5), (10.0 - std::sqrt(88.0)) / 2.0, 1e-14);
    EXPECT_EQ(nvi::select_tau(1.0, 0.5), 0.0);
    const double q = std::sqrt(1.0 - 1.0 / 4.41);
    const double tau = nvi::select_tau(0.5, q);
    EXPECT_GT(tau, 0.0);
    EXPECT_LE(nvi::assumption4_residual(0.5, tau, q), 1e-12);
}

TEST(SelectTau, FeasibleAndMaximalOnGrid) {
    for (int i = 1; i <= 60; ++i) {
        for (int j = 0; j < 60; ++j) {
            const double theta = i / 61.0;
            const double q = j / 60.0;
            const double tau = nvi::select_tau(theta, q);
            EXPECT_GE(tau, 0.0);
            EXPECT_LE(tau, nvi::kTauCap);
            EXPECT_LE(nvi::assumption4_residual(theta, tau, q), 1e-12);
            if (tau < nvi::kTauCap) {
                EXPECT_GT(nvi::assumption4_residual(theta, tau + 1e-6, q), 0.0);
            }
        }
    }
}

TEST(SelectTau, RejectsOutOfRange) {
    EXPECT_THROW(nvi::select_tau(0.0, 0.5), nvi::InvalidArgument);
    EXPECT_THROW(nvi::select_tau(0.5, 1.0), nvi::InvalidArgument);
}

TEST(PostStopBound, Examples) {
    EXPECT_DOUBLE_EQ(nvi::post_stop_bound(1e-6, 0.5, 0.879337), 1e-6 / (0.5 * (1.0 - 0.879337)));
    EXPECT_NEAR(nvi::post_stop_bound(1e-6, 0.5, 0.879337), 1.6573e-5, 1e-8);
    EXPECT_EQ(nvi::post_stop_bound(0.0, 0.5, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(nvi::post_stop_bound(1e-3, 1.0, 0.0), 1e-3);
}

TEST(Perturbation, ExactAndZeroBoundMatchPlainStep) {
    const auto ctx = game_context(1.0, 1.0, Point{{20.0, 20.0}});
    const Point z{{33.0, 12.5}};
    EXPECT_EQ(nvi::perturbed_step(ctx, z, nvi::DeltaModel::exact(), 1e-3, 4), nvi::fb_step(ctx, z));
    EXPECT_EQ(nvi::perturbed_step(ctx, z, nvi::DeltaModel::scaled_random(0.0, 3), 1e-3, 4),
              nvi::fb_step(ctx, z));
}

TEST(Perturbation, ScaledRandomStaysWithinBound) {
    const auto ctx = game_context(1.0, 1.0, Point{{20.0, 20.0}});
    const Point z{{33.0, 12.5}};
    const auto model = nvi::DeltaModel::scaled_random(1.0, 77);
    double largest = 0.0;
    for (long k = 1; k <= 1000; ++k) {
        const double d = (nvi::perturbed_step(ctx, z, model, 1e-3, k) - nvi::fb_step(ctx, z)).norm();
        EXPECT_LE(d, 1e-3 * (1.0 + 1e-12));
        largest = std::max(largest, d);
    }
    EXPECT_GT(largest, 0.9e-3);
}

TEST(Perturbation, DeterministicInSeedAndStep) {
    const auto model = nvi::DeltaModel::scaled_random(2.0, 5);
    EXPECT_EQ(nvi::draw_perturbation(model, 3, 1e-2, 9), nvi::draw_perturbation(model, 3, 1e-2, 9));
    EXPECT_NE(nvi::draw_perturbation(model, 3, 1e-2, 9), nvi::draw_perturbation(model, 3, 1e-2, 10));
    const auto other = nvi::DeltaModel::scaled_random(2.0, 6);
    EXPECT_NE(nvi::draw_perturbation(model, 3, 1e-2, 9), nvi::draw_perturbation(other, 3, 1e-2, 9));
}

TEST(Perturbation, HarmonicMagnitude) {
    const auto model = nvi::DeltaModel::harmonic(2.0, 1, 1e-3);
    for (long k : {1L, 2L, 10L, 1000L}) {
        EXPECT_NEAR(nvi::draw_perturbation(model, 2, 0.5, k).norm(), 2e-3 / k, 1e-15);
    }
    const auto no_unit = nvi::DeltaModel::harmonic(1.0, 1, std::nullopt);
    EXPECT_NEAR(nvi::draw_perturbation(no_unit, 2, 0.5, 4).norm(), 0.125, 1e-15);
}

TEST(InnerParams, Validation) {
    nvi::InnerParams p;
    EXPECT_NO_THROW(p.validate(0.5));
    p.theta = 0.0;
    EXPECT_THROW(p.validate(), nvi::InvalidArgument);
    p.theta = 0.5;
    p.tau = 1.0;
    EXPECT_THROW(p.validate(), nvi::InvalidArgument);
    p.tau = 0.5;
    EXPECT_NO_THROW(p.validate());
    EXPECT_THROW(p.validate(0.5), nvi::InvalidArgument);
    p.tau = 0.0;
    p.k_max = 0;
    EXPECT_THROW(p.validate(), nvi::InvalidArgument);
    p.k_max = 10;
    p.eps = -1.0;
    EXPECT_THROW(p.validate(), nvi::InvalidArgument);
}

TEST(IkmRun, StartingAtSolutionStopsImmediately) {
    const Point w{{0.0, 0.0}};
    const auto ctx = game_context(1.0, 1.0, w);
    const Point u = nvi::testing::game_subproblem(1.0, 1.0, w);
    nvi::InnerParams p{0.5, nvi::select_tau(0.5, ctx.q()), 1e-6, 1000, {}};
    const auto r = nvi::ikm_run(ctx, p, u);
    EXPECT_EQ(r.stop_k, 1);
    EXPECT_EQ(r.stopped_by, nvi::StopReason::criterion);
    EXPECT_LE((r.v_final - u).norm(), 0.5 * 1e-6);
}

TEST(IkmRun, GameSubproblemAccuracy) {
    const Point w{{0.0, 0.0}};
    const auto ctx = game_context(1.0, 1.0, w);
    const Point u = nvi::testing::game_subproblem(1.0, 1.0, w);
    nvi::InnerParams p{0.5, nvi::select_tau(0.5, ctx.q()), 1e-6, 100000, {}};
    const auto r = nvi::ikm_run(ctx, p, Point{{30.0, 20.0}});
    ASSERT_EQ(r.stopped_by, nvi::StopReason::criterion);
    const double bound = nvi::post_stop_bound(1e-6, 0.5, ctx.q());
    EXPECT_NEAR(bound, 1.6573e-5, 1e-8);
    EXPECT_LE((r.z_final - u).norm(), bound);
    EXPECT_LE((r.v_final - u).norm(), bound);
    EXPECT_LE((r.v_final - r.z_final).norm(), 1e-6);
}

TEST(IkmRun, LooseToleranceStopsAtFirstStep) {
    const auto ctx = game_context(1.0, 1.0, Point{{0.0, 0.0}});
    nvi::InnerParams p{0.5, 0.1, 1e6, 1000, {}};
    EXPECT_EQ(nvi::ikm_run(ctx, p, Point{{30.0, 20.0}}).stop_k, 1);
}

TEST(IkmRun, CapIsReportedNotThrown) {
    const auto ctx = game_context(1.0, 1.0, Point{{0.0, 0.0}});
    nvi::InnerParams p{0.5, 0.1, 0.0, 3, {}};
    const auto r = nvi::ikm_run(ctx, p, Point{{30.0, 20.0}}, {true, true, std::nullopt});
    EXPECT_EQ(r.stop_k, 3);
    EXPECT_EQ(r.stopped_by, nvi::StopReason::cap);
    EXPECT_EQ(r.trace.size(), 3u);
    EXPECT_EQ(r.iterates.size(), 5u);
}

TEST(IkmRun, RejectsParametersViolatingInertiaCondition) {
    const auto ctx = game_context(1.0, 1.0, Point{{0.0, 0.0}});
    nvi::InnerParams p{0.5, 0.9, 1e-6, 100, {}};
    EXPECT_THROW(nvi::ikm_run(ctx, p, Point{{30.0, 20.0}}), nvi::InvalidArgument);
}

TEST(IkmRun, NonFiniteIterateThrows) {
    nvi::LipschitzMap bad{[](const Point& x) -> Point {
                              return Point::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
                          },
                          1.0};
    nvi::FBContext ctx(nvi::identity_resolvent(), bad, nvi::zero_map(), nvi::PhiParams(1.0, 0.0),
                       Point{{0.0, 0.0}});
    nvi::InnerParams p{0.5, 0.0, 1e-6, 100, {}};
    try {
        nvi::ikm_run(ctx, p, Point{{1.0, 1.0}});
        FAIL() << "expected NonFiniteIterate";
    } catch (const nvi::NonFiniteIterate& err) {
        EXPECT_EQ(err.iteration(), 1);
    }
}

TEST(IkmRun, StoppingCriterionHoldsAsRecorded) {
    const auto game = nvi::make_zero_sum_game();
    std::mt19937_64 gen(31);
    for (int i = 0; i < 40; ++i) {
        const Point w = nvi::testing::uniform_point(gen, game.domain);
        const auto ctx = game_context(1.0, 0.3, w);
        nvi::InnerParams p{0.5, nvi::select_tau(0.5, ctx.q()), 1e-7, 100000,
                           nvi::DeltaModel::scaled_random(1.0, static_cast<std::uint64_t>(i))};
        const auto r = nvi::ikm_run(ctx, p, nvi::testing::uniform_point(gen, game.domain),
                                    {true, false, std::nullopt});
        ASSERT_EQ(r.stopped_by, nvi::StopReason::criterion);
        EXPECT_LE((r.v_final - r.z_final).norm(), 1e-7);
        EXPECT_EQ(r.trace.back().residual, (r.v_final - r.z_final).norm());
    }
}

TEST(IkmRun, PostStopAccuracyAgainstExactSolution) {
    const auto game = nvi::make_zero_sum_game();
    std::mt19937_64 gen(41);
    for (int i = 0; i < 60; ++i) {
        const double alpha = std::array{0.1, 1.0, 10.0}[i % 3];
        const double beta = std::array{0.1, 0.683, 1.0}[(i / 3) % 3];
        const double eps = std::array{1e-4, 1e-6, 1e-8}[(i / 9) % 3];
        const Point w = nvi::testing::uniform_point(gen, game.domain);
        const auto ctx = game_context(alpha, beta, w);
        nvi::InnerParams p{0.5, nvi::select_tau(0.5, ctx.q()), eps, 100000, {}};
        const auto r = nvi::ikm_run(ctx, p, nvi::testing::uniform_point(gen, game.domain));
        ASSERT_EQ(r.stopped_by, nvi::StopReason::criterion);
        const Point u = nvi::testing::game_subproblem(alpha, beta, w);
        EXPECT_LE((r.z_final - u).norm(), nvi::post_stop_bound(eps, 0.5, ctx.q()) * (1.0 + 1e-6));
    }
}

TEST(Lyapunov, Examples) {
    const Point u{{1.0, 2.0}};
    const std::vector<Point> still{u, u};
    EXPECT_EQ(nvi::lyapunov_energy(still, u, 0.5, 0.3, 1), 0.0);
    const std::vector<Point> h{Point{{5.0, 0.0}}, Point{{4.0, 3.0}}};
    EXPECT_DOUBLE_EQ(nvi::lyapunov_energy(h, u, 1.0, 0.0, 1), (h[1] - u).squaredNorm());
    EXPECT_THROW(nvi::lyapunov_energy(h, u, 0.5, 0.3, 0), nvi::InvalidArgument);
    EXPECT_THROW(nvi::lyapunov_energy(h, u, 0.5, 0.3, 2), nvi::InvalidArgument);
}

void check_energy_recursion(const nvi::DeltaModel& model) {
    const Point w{{1.5, -0.7}};
    const auto ctx = contraction_context(w);
    ASSERT_NEAR(ctx.q(), 0.5, 1e-12);
    const Point u = contraction_solution(w);
    const double theta = 0.5;
    const double tau = nvi::select_tau(theta, 0.5);
    const double big_q = nvi::energy_factor(theta, ctx.q());
    nvi::InnerParams p{theta, tau, 1e-3, 200, model};
    p.eps = 0.0;
    p.delta.unit = 1e-3;
    const auto r = nvi::ikm_run(ctx, p, Point{{4.0, 3.0}}, {true, true, u});
    ASSERT_GE(r.trace.size(), 20u);
    double prev = nvi::lyapunov_energy(r.iterates, u, theta, tau, 1);
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const auto& step = r.trace[i];
        const double energy = *step.energy;
        EXPECT_NEAR(energy, nvi::lyapunov_energy(r.iterates, u, theta, tau, i + 2), 1e-12);
        EXPECT_LE(energy, big_q * prev + 2.0 * theta * step.delta_norm * step.delta_norm + 1e-12)
            << "k = " << step.k;
        prev = energy;
    }
}

TEST(Lyapunov, EnergyRecursionExact) { check_energy_recursion(nvi::DeltaModel::exact()); }

TEST(Lyapunov, EnergyRecursionPerturbed) {
    check_energy_recursion(nvi::DeltaModel::scaled_random(1.0, 12));
}

TEST(IkmRun, StrongConvergenceWithCriterionDisabled) {
    const Point w{{-3.0, 8.0}};
    const auto ctx = contraction_context(w);
    const Point u = contraction_solution(w);
    nvi::InnerParams p{0.5, nvi::select_tau(0.5, ctx.q()), 0.0, 1000000, {}};
    const auto r = nvi::ikm_run(ctx, p, Point{{9.0, 9.0}}, {true, false, u});
    double partial = 0.0;
    long reached = -1;
    for (const auto& step : r.trace) {
        partial += *step.dist * *step.dist;
        if (reached < 0 && *step.dist < 1e-8) reached = step.k;
    }
    EXPECT_GT(reached, 0);
    EXPECT_LT(r.trace.back().dist.value() * r.trace.back().dist.value(), 1e-16);
    EXPECT_TRUE(std::isfinite(partial));
}

}  // namespace
