#include <minimax/ncc.hpp>
#include <minimax/errors.hpp>
#include <minimax/geometry.hpp>
#include <minimax/measures.hpp>

#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minimax {

RegularizedOracle::RegularizedOracle(ProblemOracle base, double lambda, Vector alpha_bar)
    : base_(std::move(base)), lambda_(lambda), alpha_bar_(std::move(alpha_bar)) {
    if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
        throw InvalidInputError("regularize: lambda must be positive");
    if (alpha_bar_.size() != base_.alpha_dim())
        throw InvalidInputError("regularize: alpha_bar has the wrong dimension");
    if (!base_.alpha_set.contains(alpha_bar_))
        throw InvalidInputError("regularize: alpha_bar is not feasible");
}

double RegularizedOracle::value(const Vector &theta, const Vector &alpha) const {
    return base_.value(theta, alpha) - 0.5 * lambda_ * (alpha - alpha_bar_).squaredNorm();
}

Vector RegularizedOracle::grad_theta(const Vector &theta, const Vector &alpha) const {
    return base_.grad_theta(theta, alpha);
}

Vector RegularizedOracle::grad_alpha(const Vector &theta, const Vector &alpha) const {
    return base_.grad_alpha(theta, alpha) - lambda_ * (alpha - alpha_bar_);
}

ProblemOracle RegularizedOracle::as_problem() const {
    ProblemOracle p = base_;
    p.name = base_.name + "+reg";
    // Copies keep the packaged oracle independent of this object's lifetime.
    p.value = [self = *this](const Vector &t, const Vector &a) { return self.value(t, a); };
    p.grad_alpha = [self = *this](const Vector &t, const Vector &a) { return self.grad_alpha(t, a); };
    p.l22 = l22_reg();
    p.mu.reset();
    if (base_.inner_solver) {
        p.inner_solver = [solver = base_.inner_solver, lambda = lambda_,
                          bar = alpha_bar_](const Vector &t, double extra, const Vector &) {
            // Only the problem's own regularization is available in closed form.
            if (extra != 0.0)
                throw InvalidInputError("regularized oracle: nested regularization unsupported");
            return solver(t, lambda, bar);
        };
    }
    return p;
}

RegularizedOracle regularize(const ProblemOracle &problem, double lambda, const Vector &alpha_bar) {
    return RegularizedOracle(problem, lambda, alpha_bar);
}

Vector apga(const RegularizedOracle &oracle, const Vector &theta, const Vector &alpha0, double eta,
            std::size_t N, std::size_t K, const BlockObserver &on_block) {
    const FeasibleSet &set = oracle.base().alpha_set;
    if (N < 1)
        throw InvalidInputError("apga: restart period N must be >= 1");
    if (!(eta > 0.0))
        throw InvalidInputError("apga: step size must be positive");
    if (alpha0.size() != set.dim() || !set.contains(alpha0))
        throw InvalidInputError("apga: alpha0 must be feasible");

    Vector x = alpha0;
    const std::size_t blocks = K / N + 1;
    std::size_t step = 0;
    for (std::size_t block = 0; block < blocks; ++block) {
        // Restart: momentum reset and x_0 = y_1, so the first extrapolation is a no-op.
        double gamma = 1.0;
        Vector y = x;
        Vector x_prev = x;
        for (std::size_t i = 1; i <= N; ++i, ++step) {
            x = set.project(y + eta * oracle.grad_alpha(theta, y));
            detail::require_finite(x, "apga iterate", step);
            const double gamma_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * gamma * gamma));
            y = x + ((gamma - 1.0) / gamma_next) * (x - x_prev);
            x_prev = x;
            gamma = gamma_next;
        }
        if (on_block)
            on_block(block, x);
    }
    return x;
}

Vector outer_step_pgd(const RegularizedOracle &oracle, const Vector &theta, const Vector &alpha) {
    const Vector grad = oracle.grad_theta(theta, alpha);
    if (!grad.allFinite())
        throw NumericError("outer_step_pgd: non-finite theta-gradient");
    if (grad.isZero(0.0))
        return theta;
    const double L = oracle.value_smoothness();
    if (!(L > 0.0))
        throw ConfigurationError("outer_step_pgd: l11 + l12^2/lambda is zero, step undefined");
    return oracle.base().theta_set.project(theta - grad / L);
}

FrankWolfeStep outer_step_fw(const RegularizedOracle &oracle, const Vector &theta,
                             const Vector &alpha, double L_tilde) {
    if (!(L_tilde > 0.0))
        throw ConfigurationError("outer_step_fw: L_tilde must be positive");
    const Vector grad = oracle.grad_theta(theta, alpha);
    if (!grad.allFinite())
        throw NumericError("outer_step_fw: non-finite theta-gradient");
    const auto local = linear_min_local(oracle.base().theta_set, theta, grad);
    FrankWolfeStep step;
    step.x_t = std::max(0.0, -local.value);
    step.direction = local.direction;
    const double ratio = step.x_t / L_tilde;
    if (ratio > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "outer_step_fw: X_t / L_tilde = " << ratio << " > 1; L_tilde is too small";
        throw ConfigurationError(os.str());
    }
    step.theta = theta + std::min(ratio, 1.0) * local.direction;
    return step;
}

NccConfig NccConfig::defaults(const ProblemOracle &problem, double eps, std::size_t K,
                              std::size_t T, OuterRule rule, double g_max) {
    const auto R = problem.alpha_set.enclosing_radius();
    if (!R)
        throw InvalidInputError("NccConfig::defaults: the alpha set must be bounded");
    if (!(eps > 0.0))
        throw InvalidInputError("NccConfig::defaults: eps must be positive");
    NccConfig config;
    config.eps = eps;
    config.lambda = eps / (4.0 * *R);
    const double l22_reg = problem.l22 + config.lambda;
    config.eta = 1.0 / l22_reg;
    config.N = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(8.0 * l22_reg / config.lambda) + 1e-9)));
    config.K = K == 0 ? 4 * config.N : std::max(K, config.N);
    config.T = T;
    config.outer_rule = rule;
    const double L_g = problem.l11 + problem.l12 * problem.l12 / config.lambda;
    config.L_tilde = std::max({L_g, problem.l12, g_max, 1.0});
    return config;
}

void NccConfig::validate() const {
    if (!(lambda > 0.0))
        throw InvalidInputError("NccConfig: lambda must be positive");
    if (N < 1)
        throw InvalidInputError("NccConfig: N must be >= 1");
    if (K < N)
        throw InvalidInputError("NccConfig: K must be >= N");
    if (T < 1)
        throw InvalidInputError("NccConfig: T must be >= 1");
    if (!(eta > 0.0))
        throw InvalidInputError("NccConfig: eta must be positive");
    if (!(eps > 0.0))
        throw InvalidInputError("NccConfig: eps must be positive");
    if (outer_rule == OuterRule::FrankWolfe && !(L_tilde > 0.0))
        throw InvalidInputError("NccConfig: Frank-Wolfe needs a positive L_tilde");
    if (measure_stride < 1)
        throw InvalidInputError("NccConfig: measure_stride must be >= 1");
}

std::size_t count_concavity_violations(const ProblemOracle &problem, std::size_t triples,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < triples; ++i) {
        const Vector theta = problem.theta_set.sample(rng);
        const Vector a1 = problem.alpha_set.sample(rng);
        const Vector a2 = problem.alpha_set.sample(rng);
        const double f1 = problem.value(theta, a1);
        const double f2 = problem.value(theta, a2);
        const double mid = problem.value(theta, 0.5 * (a1 + a2));
        const double tol = 1e-9 * (1.0 + std::abs(f1) + std::abs(f2));
        if (mid < 0.5 * (f1 + f2) - tol)
            ++violations;
    }
    return violations;
}

Trajectory solve_ncc(const ProblemOracle &problem, const NccConfig &config,
                     const RecordObserver &observer) {
    problem.validate();
    config.validate();
    if (!problem.alpha_set.is_bounded())
        throw InvalidInputError("solve_ncc: the alpha set must be bounded");
    if (config.exact_inner && !problem.inner_solver)
        throw InvalidInputError("solve_ncc: exact_inner requested but problem '" + problem.name +
                                "' has no closed-form inner solver");

    Trajectory trajectory;
    if (config.check_concavity) {
        const std::size_t bad = count_concavity_violations(problem, 100, config.seed);
        if (bad > 0) {
            std::ostringstream os;
            os << "f(theta, .) failed the midpoint concavity check on " << bad
               << " of 100 sampled triples; continuing";
            trajectory.warnings.push_back(os.str());
        }
    }

    const Vector alpha_bar = problem.alpha_set.project(config.alpha_bar.value_or(problem.alpha_set.centroid()));
    const RegularizedOracle reg(problem, config.lambda, alpha_bar);

    Vector theta = problem.theta_set.project(config.theta0.value_or(problem.theta_set.centroid()));
    Vector alpha = problem.alpha_set.project(config.alpha0.value_or(alpha_bar));

    detail::Stopwatch clock;
    for (std::size_t t = 0; t < config.T; ++t) {
        alpha = config.exact_inner ? problem.inner_solver(theta, config.lambda, alpha_bar)
                                   : apga(reg, theta, alpha, config.eta, config.N, config.K);
        detail::require_finite(alpha, "solve_ncc alpha", t);

        Vector next;
        if (config.outer_rule == OuterRule::FrankWolfe)
            next = outer_step_fw(reg, theta, alpha, config.L_tilde).theta;
        else
            next = outer_step_pgd(reg, theta, alpha);
        detail::require_finite(next, "solve_ncc theta", t);

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
            record.g_lambda_value = reg.value(theta, alpha);
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

NccIterationCounts ncc_iteration_counts(const RateConstants &c, double eps, OuterRule rule) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidInputError("ncc_iteration_counts: eps must lie in (0, 1)");
    if (!(c.R > 0.0) || !(c.L > 0.0) || !(c.l22 > 0.0))
        throw InvalidInputError("ncc_iteration_counts: R, L and l22 must be positive");

    NccIterationCounts counts;
    counts.lambda = eps / (4.0 * c.R);
    counts.kappa = c.l22 / counts.lambda;
    const double root = std::sqrt(8.0 * counts.kappa);
    counts.N = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(root + 1e-9)));

    // sqrt(8 kappa) / ln 2 * (ln a + ln b) == sqrt(8 kappa) * (log2 a + log2 b).
    const double log_terms = 4.0 * std::log2(1.0 / eps) + 17.0 + 6.0 * std::log2(c.L_bar) +
                             6.0 * std::log2(c.R_bar) + std::log2(c.Delta) - 2.0 * std::log2(c.L) -
                             std::log2(counts.lambda);
    counts.K = std::max(counts.N, detail::ceil_count(root * log_terms));

    if (rule == OuterRule::FrankWolfe) {
        counts.T = detail::ceil_count(8.0 * c.L_tilde * c.Delta / (eps * eps));
    } else {
        const double spread = c.g_max + c.L * c.R;
        counts.T = detail::ceil_count(32.0 * c.Delta_g * spread * spread / (c.L * eps * eps));
    }
    return counts;
}

} // namespace minimax
