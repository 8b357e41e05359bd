#include <minimax/problems.hpp>
#include <minimax/errors.hpp>

#include <algorithm>
#include <cmath>

namespace minimax {

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

} // namespace

ProblemOracle quadratic_saddle() {
    ProblemOracle p;
    p.name = "quadratic_saddle";
    p.value = [](const Vector &t, const Vector &a) {
        return -t[0] * t[0] + a[0] * a[0] + 4.0 * t[0] * a[0];
    };
    p.grad_theta = [](const Vector &t, const Vector &a) { return scalar(-2.0 * t[0] + 4.0 * a[0]); };
    p.grad_alpha = [](const Vector &t, const Vector &a) { return scalar(2.0 * a[0] + 4.0 * t[0]); };
    p.theta_set = FeasibleSet::interval(-1.0, 1.0);
    p.alpha_set = FeasibleSet::interval(-2.0, 2.0);
    p.l11 = 2.0;
    p.l12 = 4.0;
    p.l22 = 2.0;
    // f_lambda(theta, .) is a 1-D quadratic on [-2, 2]; compare the endpoints and the
    // stationary point when the curvature makes it a maximum.
    p.inner_solver = [](const Vector &t, double lambda, const Vector &bar) {
        auto h = [&](double a) {
            return a * a + 4.0 * t[0] * a - 0.5 * lambda * (a - bar[0]) * (a - bar[0]);
        };
        double best = h(2.0) > h(-2.0) ? 2.0 : -2.0;
        if (lambda > 2.0) {
            const double a = std::clamp((4.0 * t[0] + lambda * bar[0]) / (lambda - 2.0), -2.0, 2.0);
            if (h(a) > h(best))
                best = a;
        }
        return scalar(best);
    };
    return p;
}

ProblemOracle abs_value_game() {
    ProblemOracle p;
    p.name = "abs_value";
    p.value = [](const Vector &t, const Vector &a) { return (2.0 * a[0] - 1.0) * t[0]; };
    p.grad_theta = [](const Vector &, const Vector &a) { return scalar(2.0 * a[0] - 1.0); };
    p.grad_alpha = [](const Vector &t, const Vector &) { return scalar(2.0 * t[0]); };
    p.theta_set = FeasibleSet::interval(-1.0, 1.0);
    p.alpha_set = FeasibleSet::interval(0.0, 1.0);
    p.l11 = 0.0;
    p.l12 = 2.0;
    p.l22 = 0.0;
    p.inner_solver = [](const Vector &t, double lambda, const Vector &bar) {
        if (lambda > 0.0)
            return scalar(std::clamp(bar[0] + 2.0 * t[0] / lambda, 0.0, 1.0));
        // Unregularized: any alpha is optimal at theta = 0; keep the anchor there.
        if (t[0] > 0.0)
            return scalar(1.0);
        if (t[0] < 0.0)
            return scalar(0.0);
        return scalar(std::clamp(bar[0], 0.0, 1.0));
    };
    return p;
}

ProblemOracle pl_hyperplane_game(const Vector &a, FeasibleSet theta_set) {
    if (a.size() == 0 || !a.allFinite() || a.isZero(0.0))
        throw InvalidInputError("pl_hyperplane_game: a must be a finite non-zero vector");
    if (theta_set.dim() != 1)
        throw InvalidInputError("pl_hyperplane_game: theta is scalar");
    const double a2 = a.squaredNorm();

    ProblemOracle p;
    p.name = "pl_hyperplane";
    p.value = [a](const Vector &t, const Vector &al) {
        const double r = a.dot(al) - t[0];
        return -r * r;
    };
    p.grad_theta = [a](const Vector &t, const Vector &al) { return scalar(2.0 * (a.dot(al) - t[0])); };
    p.grad_alpha = [a](const Vector &t, const Vector &al) -> Vector {
        return -2.0 * (a.dot(al) - t[0]) * a;
    };
    p.theta_set = std::move(theta_set);
    p.alpha_set = FeasibleSet::unconstrained(a.size());
    p.l11 = 2.0;
    p.l12 = 2.0 * std::sqrt(a2);
    p.l22 = 2.0 * a2;
    p.mu = 2.0 * a2;
    // The maximizer moves from the anchor along a only; lambda = 0 gives the nearest
    // point of the hyperplane a . alpha = theta.
    p.inner_solver = [a, a2](const Vector &t, double lambda, const Vector &bar) -> Vector {
        const double r = a.dot(bar) - t[0];
        const double c = -2.0 * r / (2.0 * a2 + lambda);
        return bar + c * a;
    };
    return p;
}

ProblemOracle coupled_quadratic() {
    ProblemOracle p;
    p.name = "coupled_quadratic";
    p.value = [](const Vector &t, const Vector &a) {
        return t[0] * a[0] - 0.5 * a[0] * a[0] - 0.5 * t[0] * t[0];
    };
    p.grad_theta = [](const Vector &t, const Vector &a) { return scalar(a[0] - t[0]); };
    p.grad_alpha = [](const Vector &t, const Vector &a) { return scalar(t[0] - a[0]); };
    p.theta_set = FeasibleSet::interval(-1.0, 1.0);
    p.alpha_set = FeasibleSet::unconstrained(1);
    p.l11 = 1.0;
    p.l12 = 1.0;
    p.l22 = 1.0;
    p.mu = 1.0;
    p.inner_solver = [](const Vector &t, double lambda, const Vector &bar) {
        return scalar((t[0] + lambda * bar[0]) / (1.0 + lambda));
    };
    return p;
}

Vector simplex_inner_argmax(const Vector &losses, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidInputError("simplex_inner_argmax: lambda must be positive "
                                "(use simplex_vertex_argmax for lambda = 0)");
    if (losses.size() == 0)
        throw InvalidInputError("simplex_inner_argmax: empty loss vector");
    if (!losses.allFinite())
        throw InvalidInputError("simplex_inner_argmax: losses must be finite");
    return project_simplex(losses / lambda);
}

Vector simplex_inner_argmax(const Vector &losses, double lambda, const Vector &anchor) {
    if (anchor.size() != losses.size())
        throw InvalidInputError("simplex_inner_argmax: anchor has the wrong dimension");
    if (!(lambda > 0.0))
        throw InvalidInputError("simplex_inner_argmax: lambda must be positive");
    return simplex_inner_argmax(losses + lambda * anchor, lambda);
}

Vector simplex_vertex_argmax(const Vector &losses) {
    if (losses.size() == 0)
        throw InvalidInputError("simplex_vertex_argmax: empty loss vector");
    if (!losses.allFinite())
        throw InvalidInputError("simplex_vertex_argmax: losses must be finite");
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < losses.size(); ++i) {
        if (losses[i] > losses[best])
            best = i;
    }
    Vector t = Vector::Zero(losses.size());
    t[best] = 1.0;
    return t;
}

double simplex_kkt_multiplier(const Vector &losses, double lambda, const Vector &t) {
    double sum = 0.0;
    int support = 0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (t[i] > 0.0) {
            sum += losses[i] - lambda * t[i];
            ++support;
        }
    }
    if (support == 0)
        throw InvalidInputError("simplex_kkt_multiplier: t has empty support");
    return sum / support;
}

} // namespace minimax
