#include <minimax/diagnostics.hpp>
#include <minimax/errors.hpp>
#include <minimax/ncc.hpp>
#include <minimax/pl_gda.hpp>

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace minimax {

Vector finite_diff_grad(const ScalarField &fn, const Vector &point, double h) {
    if (!(h > 0.0))
        throw InvalidInputError("finite_diff_grad: h must be positive");
    Vector grad(point.size());
    Vector x = point;
    for (Eigen::Index i = 0; i < point.size(); ++i) {
        x[i] = point[i] + h;
        const double up = fn(x);
        x[i] = point[i] - h;
        const double down = fn(x);
        x[i] = point[i];
        if (!std::isfinite(up) || !std::isfinite(down))
            throw NumericError("finite_diff_grad: non-finite evaluation at coordinate " +
                               std::to_string(i));
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

namespace {

Vector nearby(const FeasibleSet &set, const Vector &x, double radius, std::mt19937_64 &rng) {
    boost::random::normal_distribution<double> normal;
    Vector d(x.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        d[i] = normal(rng);
    return set.project(x + radius * d / std::max(d.norm(), 1e-300));
}

void update_ratio(double &best, const Vector &g1, const Vector &g2, const Vector &x1, const Vector &x2) {
    const double dx = (x1 - x2).norm();
    if (dx > 1e-9)
        best = std::max(best, (g1 - g2).norm() / dx);
}

void warn_if_exceeds(std::vector<std::string> &warnings, const char *name, double estimate,
                     double declared) {
    if (estimate > 1.05 * declared + 1e-9) {
        std::ostringstream os;
        os << "sampled " << name << " = " << estimate << " exceeds declared " << declared << " by more than 5%";
        warnings.push_back(os.str());
    }
}

} // namespace

LipschitzEstimate estimate_lipschitz(const ProblemOracle &problem, std::size_t samples,
                                     std::uint64_t seed) {
    if (samples < 2)
        throw InvalidInputError("estimate_lipschitz: need at least 2 samples");
    std::mt19937_64 rng(seed);
    const FeasibleSet &ts = problem.theta_set;
    const FeasibleSet &as = problem.alpha_set;
    LipschitzEstimate est;
    for (std::size_t k = 0; k < samples; ++k) {
        const Vector t1 = ts.sample(rng);
        const Vector a1 = as.sample(rng);
        // Alternate far pairs and close pairs: the first see global variation, the second
        // local curvature.
        const bool local = k % 2 == 1;
        const Vector t2 = local ? nearby(ts, t1, 1e-3, rng) : ts.sample(rng);
        const Vector a2 = local ? nearby(as, a1, 1e-3, rng) : as.sample(rng);

        const Vector gt11 = problem.grad_theta(t1, a1);
        const Vector ga11 = problem.grad_alpha(t1, a1);
        update_ratio(est.l11, gt11, problem.grad_theta(t2, a1), t1, t2);
        update_ratio(est.l22, ga11, problem.grad_alpha(t1, a2), a1, a2);
        update_ratio(est.l12, gt11, problem.grad_theta(t1, a2), a1, a2);
        update_ratio(est.l12, ga11, problem.grad_alpha(t2, a1), t1, t2);
    }
    warn_if_exceeds(est.warnings, "l11", est.l11, problem.l11);
    warn_if_exceeds(est.warnings, "l12", est.l12, problem.l12);
    warn_if_exceeds(est.warnings, "l22", est.l22, problem.l22);
    return est;
}

GradientCheck check_gradients(const ProblemOracle &problem, std::size_t points, std::uint64_t seed,
                              double h) {
    std::mt19937_64 rng(seed);
    GradientCheck check;
    check.points = points;
    auto rel = [](const Vector &fd, const Vector &g) { return (fd - g).norm() / std::max(1.0, g.norm()); };
    for (std::size_t k = 0; k < points; ++k) {
        const Vector theta = problem.theta_set.sample(rng);
        const Vector alpha = problem.alpha_set.sample(rng);
        const Vector fd_t = finite_diff_grad([&](const Vector &t) { return problem.value(t, alpha); }, theta, h);
        const Vector fd_a = finite_diff_grad([&](const Vector &a) { return problem.value(theta, a); }, alpha, h);
        check.theta_error = std::max(check.theta_error, rel(fd_t, problem.grad_theta(theta, alpha)));
        check.alpha_error = std::max(check.alpha_error, rel(fd_a, problem.grad_alpha(theta, alpha)));
    }
    return check;
}

Vector inner_argmax(const ProblemOracle &problem, const Vector &theta, double lambda,
                    const Vector &alpha_bar, std::size_t steps) {
    if (lambda < 0.0)
        throw InvalidInputError("inner_argmax: lambda must be >= 0");
    if (problem.inner_solver)
        return problem.inner_solver(theta, lambda, alpha_bar);
    if (lambda > 0.0) {
        const RegularizedOracle reg(problem, lambda, alpha_bar);
        const double l = reg.l22_reg();
        const auto N = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(8.0 * l / lambda))));
        return apga(reg, theta, alpha_bar, 1.0 / l, N, std::max(steps, N));
    }
    if (problem.alpha_set.is_unconstrained() && problem.l22 > 0.0)
        return inner_ascent(problem, theta, alpha_bar, steps, 1.0 / problem.l22);
    throw InvalidInputError("inner_argmax: problem '" + problem.name +
                            "' needs lambda > 0, an unconstrained PL player or a closed-form solver");
}

ConstantEstimates estimate_constants(const ProblemOracle &problem, const Vector &theta0,
                                     const Vector &alpha0, double lambda, const Vector &alpha_bar,
                                     std::size_t inner_steps, std::size_t samples, std::uint64_t seed) {
    auto f = [&](const Vector &t, const Vector &a) {
        return problem.value(t, a) - 0.5 * lambda * (a - alpha_bar).squaredNorm();
    };
    auto g = [&](const Vector &t) { return f(t, inner_argmax(problem, t, lambda, alpha_bar, inner_steps)); };

    ConstantEstimates est;
    const double g0 = g(theta0);
    est.Delta = std::max(g0 - f(theta0, alpha0), 1e-12);

    std::mt19937_64 rng(seed);
    double g_min = g0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Vector t = problem.theta_set.sample(rng);
        const Vector a = problem.alpha_set.sample(rng);
        g_min = std::min(g_min, g(t));
        est.g_theta = std::max(est.g_theta, problem.grad_theta(t, a).norm());
        est.g_alpha = std::max(est.g_alpha, problem.grad_alpha(t, a).norm());
    }
    est.Delta_g = std::max(g0 - g_min, 1e-12);
    est.g_max = std::max({est.g_theta, est.g_alpha, 1.0});
    if (!std::isfinite(est.Delta) || !std::isfinite(est.Delta_g) || !std::isfinite(est.g_max))
        throw NumericError("estimate_constants: non-finite estimate");
    return est;
}

} // namespace minimax
