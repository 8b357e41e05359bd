#pragma once

#include <minimax/geometry.hpp>
#include <minimax/types.hpp>

#include <functional>
#include <optional>
#include <string>

namespace minimax {

using ValueFn = std::function<double(const Vector &theta, const Vector &alpha)>;
using GradientFn = std::function<Vector(const Vector &theta, const Vector &alpha)>;

/// Exact maximizer of f(theta, .) - (lambda/2) ||. - alpha_bar||^2 over the alpha set.
/// lambda == 0 asks for the unregularized maximizer when the problem can provide one.
using InnerSolverFn =
    std::function<Vector(const Vector &theta, double lambda, const Vector &alpha_bar)>;

/// A smooth min-max objective f(theta, alpha): theta minimizes, alpha maximizes.
///
/// The callables must be safe to invoke concurrently; every built-in problem captures
/// immutable state only.
struct ProblemOracle {
    std::string name;
    ValueFn value;
    GradientFn grad_theta;
    GradientFn grad_alpha;
    FeasibleSet theta_set = FeasibleSet::unconstrained(1);
    FeasibleSet alpha_set = FeasibleSet::unconstrained(1);

    // Lipschitz constants of the partial gradients.
    double l11 = 0.0;
    double l12 = 0.0;
    double l22 = 0.0;
    // PL constant of -f(theta, .), when the problem is a PL game.
    std::optional<double> mu;

    // Optional closed-form inner solver.
    InnerSolverFn inner_solver;
    // Regularization suggested by the problem's builder (used by the harness as a default).
    std::optional<double> suggested_lambda;

    Eigen::Index theta_dim() const { return theta_set.dim(); }
    Eigen::Index alpha_dim() const { return alpha_set.dim(); }

    /// Throws InvalidInputError when callables are missing or constants are invalid.
    void validate() const;
};

} // namespace minimax
