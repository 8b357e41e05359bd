#pragma once

#include <minimax/oracle.hpp>

namespace minimax {

/// f = -theta^2 + alpha^2 + 4 theta alpha on [-1, 1] x [-2, 2]. Convex in alpha, so it
/// violates the concavity the NCC solver assumes; its only first-order Nash equilibrium
/// is the origin.
ProblemOracle quadratic_saddle();

/// f = (2 alpha - 1) theta on [-1, 1] x [0, 1]. The value function is |theta|, which is
/// not differentiable at the equilibrium (0, 1/2).
ProblemOracle abs_value_game();

/// f = -(a . alpha - theta)^2 with scalar theta in theta_set and unconstrained alpha.
/// -f(theta, .) is PL with mu = 2 ||a||^2 but not strongly concave once dim(alpha) >= 2.
/// The value function is identically zero.
ProblemOracle pl_hyperplane_game(const Vector &a, FeasibleSet theta_set = FeasibleSet::interval(-1.0, 1.0));

/// f = theta alpha - alpha^2/2 - theta^2/2 on [-1, 1] x R. Strongly concave in alpha
/// (mu = l22 = 1). The inner maximizer is alpha = theta, so g is identically zero and
/// every (c, c) is a first-order Nash equilibrium.
ProblemOracle coupled_quadratic();

/// argmax over the probability simplex of sum_i t_i l_i - (lambda/2) ||t||^2.
/// KKT: t_i = max(0, (l_i - nu) / lambda) with nu fixed by sum t_i = 1, which is the
/// sort-and-threshold projection of l / lambda. Throws InvalidInputError for lambda <= 0
/// or non-finite losses.
Vector simplex_inner_argmax(const Vector &losses, double lambda);

/// Same with an anchor: sum_i t_i l_i - (lambda/2) ||t - anchor||^2.
Vector simplex_inner_argmax(const Vector &losses, double lambda, const Vector &anchor);

/// Unregularized argmax: the vertex of the largest loss, lowest index on ties.
Vector simplex_vertex_argmax(const Vector &losses);

/// The multiplier nu of the KKT system for a solution t of simplex_inner_argmax
/// (average of l_i - lambda t_i over the support).
double simplex_kkt_multiplier(const Vector &losses, double lambda, const Vector &t);

} // namespace minimax
