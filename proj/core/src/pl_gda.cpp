#include <minimax/pl_gda.hpp>
#include <minimax/errors.hpp>
#include <minimax/measures.hpp>

#include "detail.hpp"

#include <cmath>

namespace minimax {

PlConfig PlConfig::defaults(const ProblemOracle &problem, double eps, std::size_t K, std::size_t T) {
    if (!problem.mu)
        throw InvalidInputError("PlConfig::defaults: problem '" + problem.name + "' has no mu");
    if (!(problem.l22 > 0.0))
        throw InvalidInputError("PlConfig::defaults: l22 must be positive");
    PlConfig config;
    config.eps = eps;
    config.K = K;
    config.T = T;
    config.eta1 = 1.0 / problem.l22;
    const double L = problem.l11 + problem.l12 * problem.l12 / (2.0 * *problem.mu);
    if (!(L > 0.0))
        throw InvalidInputError("PlConfig::defaults: value-function smoothness is zero");
    config.eta2 = 1.0 / L;
    return config;
}

void PlConfig::validate() const {
    if (T < 1)
        throw InvalidInputError("PlConfig: T must be >= 1");
    if (!(eta1 > 0.0) || !(eta2 > 0.0))
        throw InvalidInputError("PlConfig: step sizes must be positive");
    if (!(eps > 0.0))
        throw InvalidInputError("PlConfig: eps must be positive");
    if (measure_stride < 1)
        throw InvalidInputError("PlConfig: measure_stride must be >= 1");
}

Vector inner_ascent(const ProblemOracle &problem, const Vector &theta, const Vector &alpha0,
                    std::size_t K, double eta1, double divergence_limit) {
    if (!problem.alpha_set.is_unconstrained())
        throw InvalidInputError("inner_ascent: the max player must be unconstrained in a PL game");
    if (alpha0.size() != problem.alpha_dim())
        throw InvalidInputError("inner_ascent: alpha0 has the wrong dimension");
    Vector alpha = alpha0;
    for (std::size_t k = 0; k < K; ++k) {
        alpha += eta1 * problem.grad_alpha(theta, alpha);
        detail::require_finite(alpha, "inner_ascent iterate", k);
        if (alpha.norm() > divergence_limit)
            throw NumericError("inner_ascent: ||alpha|| exceeded the divergence limit", k);
    }
    return alpha;
}

Trajectory solve_pl(const ProblemOracle &problem, const PlConfig &config,
                    const RecordObserver &observer) {
    problem.validate();
    config.validate();
    if (!problem.mu)
        throw InvalidInputError("solve_pl: problem '" + problem.name + "' has no PL constant mu");
    if (!problem.alpha_set.is_unconstrained())
        throw InvalidInputError("solve_pl: the max player must be unconstrained");
    if (!problem.theta_set.is_bounded())
        throw InvalidInputError("solve_pl: the theta set must be bounded");

    Vector theta = problem.theta_set.project(config.theta0.value_or(problem.theta_set.centroid()));
    const Vector alpha_start = config.alpha0.value_or(Vector::Zero(problem.alpha_dim()));
    if (alpha_start.size() != problem.alpha_dim())
        throw InvalidInputError("solve_pl: alpha0 has the wrong dimension");
    Vector alpha = alpha_start;

    Trajectory trajectory;
    detail::Stopwatch clock;
    for (std::size_t t = 0; t < config.T; ++t) {
        const Vector &inner_start = config.warm_start ? alpha : alpha_start;
        alpha = inner_ascent(problem, theta, inner_start, config.K, config.eta1, config.divergence_limit);

        const Vector grad = problem.grad_theta(theta, alpha);
        detail::require_finite(grad, "solve_pl theta-gradient", t);
        Vector next = problem.theta_set.project(theta - config.eta2 * grad);
        detail::require_finite(next, "solve_pl theta iterate", t);

        trajectory.iterations = t + 1;
        bool done = false;
        if (t % config.measure_stride == 0) {
            IterationRecord record;
            record.iter = t;
            record.theta = theta;
            record.alpha = alpha;
            record.x_measure = x_measure(problem, theta, alpha);
            record.y_measure = y_measure(problem, theta, alpha);
            record.f_value = problem.value(theta, alpha);
            record.step_norm = (next - theta).norm();
            record.wall_time_ns = clock.elapsed_ns();
            done = config.stop_at_eps && record.worst() <= config.eps;
            if (observer)
                observer(record);
            trajectory.push(std::move(record));
        }
        theta = std::move(next);
        if (done)
            break;
    }
    return trajectory;
}

PlIterationCounts pl_iteration_counts(const RateConstants &c, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidInputError("pl_iteration_counts: eps must lie in (0, 1)");
    if (!(c.rho >= 0.0 && c.rho < 1.0))
        throw InvalidInputError("pl_iteration_counts: rho must lie in [0, 1)");
    if (!c.mu || !(*c.mu > 0.0))
        throw InvalidInputError("pl_iteration_counts: mu must be positive");
    if (!(c.L > 0.0))
        throw InvalidInputError("pl_iteration_counts: L must be positive");

    PlIterationCounts counts;
    // Base-2 logarithms keep power-of-two inputs exact; the ratio is base independent.
    if (c.rho == 0.0) {
        counts.K = 1;
    } else {
        const double log_terms = 4.0 * std::log2(1.0 / eps) + 15.0 + 6.0 * std::log2(c.L_bar) +
                                 6.0 * std::log2(c.R_bar) + std::log2(c.Delta) -
                                 2.0 * std::log2(c.L) - std::log2(*c.mu);
        counts.K = detail::ceil_count(log_terms / std::log2(1.0 / c.rho));
    }
    const double spread = c.g_max + c.L * c.R;
    counts.T = detail::ceil_count(32.0 * c.Delta_g * spread * spread / (c.L * eps * eps));
    return counts;
}

} // namespace minimax
