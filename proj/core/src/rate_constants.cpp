#include <minimax/rate_constants.hpp>
#include <minimax/errors.hpp>

#include <algorithm>
#include <cmath>

namespace minimax {

namespace {

void check_common(double eps, double R, double Delta, double Delta_g, double g_max) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidInputError("rate constants: eps must lie in (0, 1)");
    if (!(R > 0.0) || !(Delta > 0.0) || !(Delta_g >= 0.0) || !(g_max > 0.0))
        throw InvalidInputError("rate constants: R, Delta, g_max must be positive and Delta_g >= 0");
}

void finish(RateConstants &c, double eps) {
    c.g_max = std::max(c.g_max, 1.0);
    c.L_tilde = std::max({c.L, c.l12, c.g_max});
    c.L_bar = std::max({c.l12, c.l22, c.L, c.g_max, 1.0});
    c.R_bar = std::max(c.R, 1.0);
    const double denom = c.g_max + c.L * c.R;
    c.delta = c.L * eps * eps / (64.0 * c.R * denom * denom);
}

} // namespace

RateConstants pl_rate_constants(const ProblemOracle &problem, double eps, double R, double Delta,
                                double Delta_g, double g_max) {
    check_common(eps, R, Delta, Delta_g, g_max);
    if (!problem.mu)
        throw InvalidInputError("pl_rate_constants: problem has no PL constant mu");
    const double mu = *problem.mu;
    if (problem.l22 < mu)
        throw InvalidInputError("pl_rate_constants: l22 must be >= mu");

    RateConstants c;
    c.l11 = problem.l11;
    c.l12 = problem.l12;
    c.l22 = problem.l22;
    c.mu = mu;
    c.R = R;
    c.Delta = Delta;
    c.Delta_g = Delta_g;
    c.g_max = g_max;
    c.kappa = problem.l22 / mu;
    c.rho = 1.0 - 1.0 / c.kappa;
    c.L = problem.l11 + problem.l12 * problem.l12 / (2.0 * mu);
    finish(c, eps);
    return c;
}

RateConstants ncc_rate_constants(const ProblemOracle &problem, double eps, double R, double Delta,
                                 double Delta_g, double g_max) {
    check_common(eps, R, Delta, Delta_g, g_max);
    const double lambda = eps / (4.0 * R);

    RateConstants c;
    c.l11 = problem.l11;
    c.l12 = problem.l12;
    c.l22 = problem.l22 + lambda;
    c.lambda = lambda;
    c.R = R;
    c.Delta = Delta;
    c.Delta_g = Delta_g;
    c.g_max = g_max;
    c.kappa = c.l22 / lambda;
    c.rho = 1.0 - 1.0 / c.kappa;
    c.L = problem.l11 + problem.l12 * problem.l12 / lambda;
    finish(c, eps);
    return c;
}

} // namespace minimax
