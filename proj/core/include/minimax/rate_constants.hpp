#pragma once

#include <minimax/oracle.hpp>

#include <optional>

namespace minimax {

/// Constants behind the theory-prescribed inner (K) and outer (T) iteration counts.
///
/// Delta, Delta_g and g_max are upper bounds that cannot be computed a priori; the
/// harness fills them from sampled estimates and logs them in the run report.
struct RateConstants {
    double l11 = 0.0;
    double l12 = 0.0;
    /// Smoothness of the inner objective seen by the ascent loop. For the regularized
    /// method this is l22 + lambda.
    double l22 = 0.0;
    std::optional<double> mu;
    std::optional<double> lambda;
    /// Radius of a ball containing the bounded feasible set(s).
    double R = 1.0;

    double Delta = 1.0;   ///< bound on the initial inner gap g(theta_t) - f(theta_t, alpha_0)
    double Delta_g = 1.0; ///< bound on g(theta_0) - min g
    double g_max = 1.0;   ///< max{gradient bounds, 1}

    // Derived.
    double kappa = 1.0;
    double rho = 0.0;
    double L = 0.0;       ///< smoothness of the (regularized) value function
    double L_tilde = 0.0; ///< max{L, l12, g_max}
    double L_bar = 1.0;   ///< max{l12, l22, L, g_max, 1}
    double R_bar = 1.0;   ///< max{R, 1}
    double delta = 0.0;   ///< gradient-error target L eps^2 / (2^6 R (g_max + L R)^2)
};

/// Fills the derived fields for a PL game: kappa = l22/mu, rho = 1 - 1/kappa,
/// L = l11 + l12^2 / (2 mu).
RateConstants pl_rate_constants(const ProblemOracle &problem, double eps, double R, double Delta,
                                double Delta_g, double g_max);

/// Fills the derived fields for the regularized method: lambda = eps / (4R),
/// inner smoothness l22 + lambda, kappa = (l22 + lambda) / lambda, L = l11 + l12^2 / lambda.
RateConstants ncc_rate_constants(const ProblemOracle &problem, double eps, double R, double Delta,
                                 double Delta_g, double g_max);

} // namespace minimax
