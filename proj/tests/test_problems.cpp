#include <minimax/diagnostics.hpp>
#include <minimax/errors.hpp>
#include <minimax/fair.hpp>
#include <minimax/geometry.hpp>
#include <minimax/measures.hpp>
#include <minimax/problems.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using minimax::Vector;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }
Vector vec3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

double regularized_objective(const Vector &losses, double lambda, const Vector &t) {
    return losses.dot(t) - 0.5 * lambda * t.squaredNorm();
}

} // namespace

TEST(QuadraticSaddle, ValuesAndGradients) {
    const auto p = minimax::quadratic_saddle();
    EXPECT_EQ(p.value(scalar(0), scalar(0)), 0.0);
    EXPECT_EQ(p.value(scalar(1), scalar(-1)), -4.0);
    EXPECT_EQ(p.grad_theta(scalar(1), scalar(1))[0], 2.0);
    EXPECT_EQ(p.grad_alpha(scalar(1), scalar(1))[0], 6.0);
    EXPECT_EQ(p.l11, 2.0);
    EXPECT_EQ(p.l12, 4.0);
    EXPECT_EQ(p.l22, 2.0);
    EXPECT_TRUE(p.theta_set.contains(scalar(-1)));
    EXPECT_FALSE(p.alpha_set.contains(scalar(2.1)));
    EXPECT_EQ(minimax::measure(p, scalar(0), scalar(0)).worst(), 0.0);
}

TEST(QuadraticSaddle, GridEquilibria) {
    // Interior: -2 theta + 4 alpha = 0 and 2 alpha + 4 theta = 0 force the origin. The
    // corners (1, -2) and (-1, 2) also qualify: grad_alpha vanishes there and grad_theta
    // points out of [-1, 1].
    const auto p = minimax::quadratic_saddle();
    std::vector<std::pair<int, int>> found;
    for (int i = -20; i <= 20; ++i) {
        for (int j = -40; j <= 40; ++j) {
            const Vector t = scalar(i / 20.0), a = scalar(j / 20.0);
            if (minimax::measure(p, t, a).worst() <= 1e-12)
                found.emplace_back(i, j);
        }
    }
    const std::vector<std::pair<int, int>> expected{{-20, 40}, {0, 0}, {20, -40}};
    EXPECT_EQ(found, expected);
}

TEST(QuadraticSaddle, InnerSolverAgreesWithGrid) {
    const auto p = minimax::quadratic_saddle();
    for (double theta : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
        for (double lambda : {0.0, 1.0, 3.0, 10.0}) {
            auto obj = [&](double a) { return -(p.value(scalar(theta), scalar(a)) - 0.5 * lambda * a * a); };
            const double grid = -oracle::grid_min_1d(obj, -2, 2, 1e-4);
            const double got = p.inner_solver(scalar(theta), lambda, scalar(0))[0];
            EXPECT_NEAR(-obj(got), grid, 1e-6) << theta << " " << lambda;
        }
    }
}

TEST(AbsValueGame, ValueFunctionIsAbsoluteValue) {
    const auto p = minimax::abs_value_game();
    for (double theta : {-0.8, -0.1, 0.0, 0.7}) {
        auto neg = [&](double a) { return -p.value(scalar(theta), scalar(a)); };
        EXPECT_NEAR(-oracle::grid_min_1d(neg, 0, 1, 1e-3), std::abs(theta), 1e-12);
        const Vector star = p.inner_solver(scalar(theta), 0.0, scalar(0.5));
        EXPECT_NEAR(p.value(scalar(theta), star), std::abs(theta), 1e-12);
    }
}

TEST(AbsValueGame, LongInnerMaximization) {
    const auto p = minimax::abs_value_game();
    const Vector star = minimax::inner_argmax(p, scalar(0.7), 1e-6, scalar(0.5), 5000);
    EXPECT_NEAR(p.value(scalar(0.7), star), 0.7, 1e-6);
}

TEST(AbsValueGame, MidpointAnnihilatesAndEquilibrium) {
    const auto p = minimax::abs_value_game();
    for (double theta : {-1.0, -0.2, 0.5, 1.0})
        EXPECT_EQ(p.value(scalar(theta), scalar(0.5)), 0.0);
    EXPECT_EQ(minimax::measure(p, scalar(0), scalar(0.5)).worst(), 0.0);
    EXPECT_EQ(p.l11, 0.0);
    EXPECT_EQ(p.l22, 0.0);
    EXPECT_EQ(p.l12, 2.0);
}

TEST(AbsValueGame, RegularizedInnerSolverAgreesWithGrid) {
    const auto p = minimax::abs_value_game();
    for (double theta : {-0.6, -0.01, 0.0, 0.02, 0.9}) {
        for (double bar : {0.0, 0.5, 0.8}) {
            const double lambda = 0.1;
            auto obj = [&](double a) { return -(p.value(scalar(theta), scalar(a)) - 0.5 * lambda * (a - bar) * (a - bar)); };
            double arg = 0;
            oracle::grid_min_1d(obj, 0, 1, 1e-5, &arg);
            EXPECT_NEAR(p.inner_solver(scalar(theta), lambda, scalar(bar))[0], arg, 2e-5);
        }
    }
}

TEST(PlHyperplaneGame, ConstantsAndValueFunction) {
    const Vector a = (Vector(2) << 1, 1).finished();
    const auto p = minimax::pl_hyperplane_game(a);
    EXPECT_EQ(*p.mu, 4.0);
    EXPECT_EQ(p.l22, 4.0);
    EXPECT_NEAR(p.l12, 2 * std::sqrt(2.0), 1e-15);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 10; ++k) {
        const Vector theta = p.theta_set.sample(rng);
        const Vector star = p.inner_solver(theta, 0.0, (Vector(2) << 5, -3).finished());
        EXPECT_NEAR(p.value(theta, star), 0.0, 1e-15);
        EXPECT_NEAR(minimax::y_measure(p, theta, star), 0.0, 1e-12);
    }
}

TEST(PlHyperplaneGame, PlIdentity) {
    // 1/2 ||grad h||^2 = 2 ||a||^2 h for h = (a . alpha - theta)^2.
    const Vector a = vec3(0.5, -1, 2);
    const auto p = minimax::pl_hyperplane_game(a);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    for (int k = 0; k < 20; ++k) {
        const Vector alpha = vec3(n(rng), n(rng), n(rng));
        const Vector theta = scalar(std::uniform_real_distribution<double>(-1, 1)(rng));
        const double h = -p.value(theta, alpha);
        EXPECT_NEAR(0.5 * p.grad_alpha(theta, alpha).squaredNorm(), *p.mu * h, 1e-10 * (1 + h));
    }
}

TEST(PlHyperplaneGame, RejectsZeroDirection) {
    EXPECT_THROW(minimax::pl_hyperplane_game(Vector::Zero(2)), minimax::InvalidInputError);
    EXPECT_THROW(minimax::pl_hyperplane_game(Vector::Ones(2), minimax::FeasibleSet::unconstrained(2)),
                 minimax::InvalidInputError);
}

TEST(CoupledQuadratic, DiagonalIsEquilibrium) {
    const auto p = minimax::coupled_quadratic();
    for (double c : {-0.9, 0.0, 0.3, 1.0})
        EXPECT_EQ(minimax::measure(p, scalar(c), scalar(c)).worst(), 0.0);
    EXPECT_EQ(*p.mu, 1.0);
}

TEST(SimplexArgmax, EqualLossesGiveUniform) {
    for (double lambda : {0.01, 1.0, 100.0}) {
        const Vector t = minimax::simplex_inner_argmax(Vector::Constant(3, 2.5), lambda);
        EXPECT_LE((t - Vector::Constant(3, 1.0 / 3)).norm(), 1e-13);
    }
}

TEST(SimplexArgmax, SmallLambdaPicksVertex) {
    const Vector t = minimax::simplex_inner_argmax(vec3(1, 2, 3), 1.0);
    EXPECT_EQ(t, vec3(0, 0, 1));
    Vector grid_arg;
    oracle::grid_simplex3_max([](const Vector &x) { return regularized_objective(vec3(1, 2, 3), 1.0, x); }, 1e-3,
                              &grid_arg);
    EXPECT_LE((grid_arg - t).norm(), 1e-9);
}

TEST(SimplexArgmax, LargeLambdaInteriorSolution) {
    const Vector t = minimax::simplex_inner_argmax(vec3(1, 2, 3), 100.0);
    EXPECT_NEAR(t[0], 0.97 / 3, 1e-14);
    EXPECT_NEAR(t[1], 1.0 / 3, 1e-14);
    EXPECT_NEAR(t[2], 1.03 / 3, 1e-14);
    EXPECT_NEAR(minimax::simplex_kkt_multiplier(vec3(1, 2, 3), 100.0, t), -94.0 / 3, 1e-11);
}

TEST(SimplexArgmax, MatchesGridOracleOnRandomInstances) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 3);
    std::uniform_real_distribution<double> log_lambda(-2, 1);
    for (int k = 0; k < 20; ++k) {
        const Vector l = vec3(u(rng), u(rng), u(rng));
        const double lambda = std::pow(10.0, log_lambda(rng));
        const Vector t = minimax::simplex_inner_argmax(l, lambda);
        const double grid = oracle::grid_simplex3_max([&](const Vector &x) { return regularized_objective(l, lambda, x); });
        const double got = regularized_objective(l, lambda, t);
        EXPECT_GE(got, grid - 1e-12);
        EXPECT_LE(got - grid, 1e-6 * std::max(1.0, lambda));
    }
}

TEST(SimplexArgmax, KktConditions) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    for (int k = 0; k < 50; ++k) {
        const int m = 2 + k % 6;
        Vector l(m);
        for (int i = 0; i < m; ++i)
            l[i] = 2 * n(rng);
        const double lambda = std::exp(n(rng));
        const Vector t = minimax::simplex_inner_argmax(l, lambda);
        EXPECT_NEAR(t.sum(), 1.0, 1e-12);
        EXPECT_GE(t.minCoeff(), 0.0);
        const double nu = minimax::simplex_kkt_multiplier(l, lambda, t);
        for (int i = 0; i < m; ++i) {
            if (t[i] > 0)
                EXPECT_NEAR(l[i] - lambda * t[i], nu, 1e-8);
            else
                EXPECT_LE(l[i], nu + 1e-10);
        }
    }
}

TEST(SimplexArgmax, AnchorShiftsLosses) {
    const Vector l = vec3(0.2, 0.5, 0.1);
    const Vector anchor = vec3(0.6, 0.1, 0.3);
    const double lambda = 0.7;
    const Vector t = minimax::simplex_inner_argmax(l, lambda, anchor);
    const double best = l.dot(t) - 0.5 * lambda * (t - anchor).squaredNorm();
    const double grid = oracle::grid_simplex3_max(
        [&](const Vector &x) { return l.dot(x) - 0.5 * lambda * (x - anchor).squaredNorm(); });
    EXPECT_GE(best, grid - 1e-12);
    EXPECT_LE(best - grid, 1e-6);
}

TEST(SimplexArgmax, VertexTieBreakAndErrors) {
    EXPECT_EQ(minimax::simplex_vertex_argmax(vec3(3, 1, 3)), vec3(1, 0, 0));
    EXPECT_EQ(minimax::simplex_vertex_argmax(vec3(-1, 2, 0)), vec3(0, 1, 0));
    EXPECT_THROW(minimax::simplex_inner_argmax(vec3(1, 2, 3), 0.0), minimax::InvalidInputError);
    EXPECT_THROW(minimax::simplex_inner_argmax(vec3(1, NAN, 3), 1.0), minimax::InvalidInputError);
}

TEST(BuiltinProblems, GradientsMatchFiniteDifferences) {
    const Vector a = (Vector(2) << 1, 1).finished();
    const auto model = minimax::synth_fair_dataset(0, 40);
    const auto mlp = minimax::synth_fair_dataset(0, 40, minimax::LossKind::TanhMlp);
    for (const auto &p : {minimax::quadratic_saddle(), minimax::abs_value_game(), minimax::pl_hyperplane_game(a),
                          minimax::coupled_quadratic(), minimax::fair_classification_problem(model, 0.1),
                          minimax::fair_classification_problem(mlp, 0.1)}) {
        const auto check = minimax::check_gradients(p, 20, 7);
        EXPECT_LE(check.worst(), 1e-5) << p.name;
    }
}

TEST(BuiltinProblems, DeclaredLipschitzConstantsHold) {
    const Vector a = (Vector(2) << 1, -2).finished();
    const auto model = minimax::synth_fair_dataset(0, 40);
    for (const auto &p : {minimax::quadratic_saddle(), minimax::abs_value_game(), minimax::pl_hyperplane_game(a),
                          minimax::coupled_quadratic(), minimax::fair_classification_problem(model, 0.1)}) {
        const auto est = minimax::estimate_lipschitz(p, 200, 11);
        EXPECT_TRUE(est.warnings.empty()) << p.name;
        EXPECT_LE(est.l11, p.l11 * 1.05 + 1e-9) << p.name;
        EXPECT_LE(est.l12, p.l12 * 1.05 + 1e-9) << p.name;
        EXPECT_LE(est.l22, p.l22 * 1.05 + 1e-9) << p.name;
    }
}
