#include <minimax/diagnostics.hpp>
#include <minimax/errors.hpp>
#include <minimax/problems.hpp>

#include <gtest/gtest.h>

#include <cmath>

using minimax::FeasibleSet;
using minimax::ProblemOracle;
using minimax::Vector;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

// f = theta * alpha on [-1, 1] x [-1, 1].
ProblemOracle bilinear() {
    ProblemOracle p;
    p.name = "bilinear";
    p.value = [](const Vector &t, const Vector &a) { return t[0] * a[0]; };
    p.grad_theta = [](const Vector &, const Vector &a) { return scalar(a[0]); };
    p.grad_alpha = [](const Vector &t, const Vector &) { return scalar(t[0]); };
    p.theta_set = FeasibleSet::interval(-1, 1);
    p.alpha_set = FeasibleSet::interval(-1, 1);
    p.l12 = 1;
    return p;
}

} // namespace

TEST(FiniteDiffGrad, QuadraticIsExact) {
    const Vector g = minimax::finite_diff_grad([](const Vector &x) { return x[0] * x[0]; }, scalar(1), 1e-5);
    EXPECT_NEAR(g[0], 2.0, 1e-9);
}

TEST(FiniteDiffGrad, ConstantFieldIsZero) {
    const Vector g = minimax::finite_diff_grad([](const Vector &) { return 4.2; }, Vector::Ones(3), 1e-3);
    EXPECT_EQ(g, Vector::Zero(3));
}

TEST(FiniteDiffGrad, AbsoluteValueAwayFromKink) {
    const Vector g = minimax::finite_diff_grad([](const Vector &x) { return std::abs(x[0]); }, scalar(0.3), 1e-4);
    EXPECT_NEAR(g[0], 1.0, 1e-8);
}

TEST(FiniteDiffGrad, Errors) {
    auto f = [](const Vector &x) { return x.sum(); };
    EXPECT_THROW(minimax::finite_diff_grad(f, scalar(0), 0.0), minimax::InvalidInputError);
    EXPECT_THROW(minimax::finite_diff_grad([](const Vector &x) { return std::log(x[0]); }, scalar(0), 1e-3),
                 minimax::NumericError);
}

TEST(EstimateLipschitz, BilinearCoupling) {
    const auto est = minimax::estimate_lipschitz(bilinear(), 200, 1);
    EXPECT_NEAR(est.l12, 1.0, 1e-6);
    EXPECT_EQ(est.l11, 0.0);
    EXPECT_EQ(est.l22, 0.0);
    EXPECT_TRUE(est.warnings.empty());
}

TEST(EstimateLipschitz, QuadraticSaddleBounds) {
    const auto est = minimax::estimate_lipschitz(minimax::quadratic_saddle(), 200, 2);
    EXPECT_LE(est.l11, 2.0 + 1e-9);
    EXPECT_NEAR(est.l11, 2.0, 1e-6);
    EXPECT_NEAR(est.l22, 2.0, 1e-6);
    EXPECT_NEAR(est.l12, 4.0, 1e-6);
}

TEST(EstimateLipschitz, WarnsOnUnderstatedConstant) {
    auto p = bilinear();
    p.l12 = 0.5;
    const auto est = minimax::estimate_lipschitz(p, 100, 3);
    ASSERT_EQ(est.warnings.size(), 1u);
    EXPECT_NE(est.warnings[0].find("l12"), std::string::npos);
}

TEST(EstimateLipschitz, DeterministicPerSeed) {
    const auto p = minimax::abs_value_game();
    const auto a = minimax::estimate_lipschitz(p, 50, 9);
    const auto b = minimax::estimate_lipschitz(p, 50, 9);
    EXPECT_EQ(a.l12, b.l12);
}

TEST(CheckGradients, DetectsWrongGradient) {
    auto p = bilinear();
    EXPECT_LE(minimax::check_gradients(p, 20, 1).worst(), 1e-8);
    p.grad_alpha = [](const Vector &t, const Vector &) { return scalar(1.1 * t[0]); };
    const auto check = minimax::check_gradients(p, 20, 1);
    EXPECT_GT(check.alpha_error, 1e-3);
    EXPECT_LE(check.theta_error, 1e-8);
    EXPECT_EQ(check.points, 20u);
}

TEST(InnerArgmax, ClosedFormAndFallbacks) {
    const auto abs = minimax::abs_value_game();
    EXPECT_EQ(minimax::inner_argmax(abs, scalar(0.3), 0.0, scalar(0.5), 10)[0], 1.0);

    auto no_solver = abs;
    no_solver.inner_solver = nullptr;
    const Vector reg = minimax::inner_argmax(no_solver, scalar(0.01), 0.1, scalar(0.5), 2000);
    EXPECT_NEAR(reg[0], 0.7, 1e-9); // 0.5 + 2 * 0.01 / 0.1
    EXPECT_THROW(minimax::inner_argmax(no_solver, scalar(0.01), 0.0, scalar(0.5), 10), minimax::InvalidInputError);

    auto pl = minimax::pl_hyperplane_game((Vector(2) << 1, 1).finished());
    pl.inner_solver = nullptr;
    const Vector star = minimax::inner_argmax(pl, scalar(0.4), 0.0, Vector::Zero(2), 50);
    EXPECT_NEAR(star.sum(), 0.4, 1e-12);
}

TEST(EstimateConstants, BoundsAreFloored) {
    const auto p = minimax::abs_value_game();
    // Start at the equilibrium: both gaps vanish and are floored.
    const auto est = minimax::estimate_constants(p, scalar(0), scalar(0.5), 0.0, scalar(0.5), 10, 50, 4);
    EXPECT_EQ(est.Delta, 1e-12);
    EXPECT_EQ(est.Delta_g, 1e-12);
    EXPECT_GE(est.g_max, 1.0);
    EXPECT_LE(est.g_theta, 1.0); // |2 alpha - 1| <= 1
    EXPECT_GT(est.g_theta, 0.9);
    EXPECT_LE(est.g_alpha, 2.0); // |2 theta| <= 2
    EXPECT_GT(est.g_alpha, 1.8);
}

TEST(EstimateConstants, GapFromOffCenterStart) {
    const auto p = minimax::abs_value_game();
    const auto est = minimax::estimate_constants(p, scalar(0.5), scalar(0.5), 0.0, scalar(0.5), 10, 50, 4);
    EXPECT_NEAR(est.Delta, 0.5, 1e-12);   // g(0.5) - f(0.5, 0.5)
    // g(0.5) - min g over samples, close to 0.5 - 0.
    EXPECT_LE(est.Delta_g, 0.5);
    EXPECT_GT(est.Delta_g, 0.45);
}
