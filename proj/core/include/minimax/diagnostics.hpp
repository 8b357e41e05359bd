#pragma once

#include <minimax/oracle.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace minimax {

using ScalarField = std::function<double(const Vector &)>;

/// Central differences per coordinate. Throws InvalidInputError for h <= 0 and
/// NumericError when an evaluation is not finite.
Vector finite_diff_grad(const ScalarField &fn, const Vector &point, double h);

struct LipschitzEstimate {
    double l11 = 0.0;
    double l12 = 0.0;
    double l22 = 0.0;
    /// One entry per estimate exceeding the declared constant by more than 5%.
    std::vector<std::string> warnings;
};

/// Largest sampled difference quotients of the partial gradients, over random feasible
/// pairs and nearby pairs. These are lower bounds on the true constants.
LipschitzEstimate estimate_lipschitz(const ProblemOracle &problem, std::size_t samples,
                                     std::uint64_t seed);

struct GradientCheck {
    /// max over points of ||fd - g|| / max(1, ||g||) for each partial gradient.
    double theta_error = 0.0;
    double alpha_error = 0.0;
    std::size_t points = 0;
    double worst() const { return theta_error > alpha_error ? theta_error : alpha_error; }
};

GradientCheck check_gradients(const ProblemOracle &problem, std::size_t points, std::uint64_t seed,
                              double h = 1e-6);

/// Maximizer of f(theta, .) - (lambda/2) ||. - alpha_bar||^2: the problem's closed form
/// when available, otherwise `steps` iterations of restarted accelerated ascent
/// (lambda > 0) or plain ascent on an unconstrained PL player (lambda == 0).
Vector inner_argmax(const ProblemOracle &problem, const Vector &theta, double lambda,
                    const Vector &alpha_bar, std::size_t steps);

struct ConstantEstimates {
    /// Initial inner gap g(theta0) - f(theta0, alpha0).
    double Delta = 0.0;
    /// g(theta0) - min over sampled theta of g.
    double Delta_g = 0.0;
    double g_theta = 0.0;
    double g_alpha = 0.0;
    /// max{g_theta, g_alpha, 1}.
    double g_max = 1.0;
};

/// Sampled stand-ins for the bounds the iteration counts need. With lambda > 0 the gaps
/// refer to the regularized objective. Gaps are floored at 1e-12.
ConstantEstimates estimate_constants(const ProblemOracle &problem, const Vector &theta0,
                                     const Vector &alpha0, double lambda, const Vector &alpha_bar,
                                     std::size_t inner_steps, std::size_t samples, std::uint64_t seed);

} // namespace minimax
