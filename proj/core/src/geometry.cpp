#include <minimax/geometry.hpp>
#include <minimax/errors.hpp>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace minimax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kFeasibilityTol = 1e-8;
constexpr int kDykstraSweeps = 50;
constexpr double kDykstraExit = 1e-10;
constexpr int kSubgradientIters = 1000;

void require_dim(const FeasibleSet &set, const Vector &v, const char *what) {
    if (v.size() != set.dim()) {
        std::ostringstream os;
        os << what << ": dimension " << v.size() << " does not match set dimension " << set.dim();
        throw InvalidInputError(os.str());
    }
}

} // namespace

FeasibleSet FeasibleSet::unconstrained(Eigen::Index dim) {
    if (dim < 1)
        throw InvalidInputError("unconstrained set needs dim >= 1");
    return FeasibleSet(Unconstrained{dim});
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
    if (lower.size() != upper.size() || lower.size() < 1)
        throw InvalidInputError("box bounds must be non-empty and of equal length");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] <= upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw InvalidInputError("box requires finite lower[i] <= upper[i]");
    }
    return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::interval(double lower, double upper) {
    return box(Vector::Constant(1, lower), Vector::Constant(1, upper));
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
    if (center.size() < 1)
        throw InvalidInputError("ball needs dim >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidInputError("ball radius must be positive");
    return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::simplex(Eigen::Index dim) {
    if (dim < 1)
        throw InvalidInputError("simplex needs dim >= 1");
    return FeasibleSet(Simplex{dim});
}

Eigen::Index FeasibleSet::dim() const {
    return std::visit(overloaded{[](const Unconstrained &u) { return u.dim; },
                                 [](const Box &b) { return b.lower.size(); },
                                 [](const Ball &b) { return b.center.size(); },
                                 [](const Simplex &s) { return s.dim; }},
                      set_);
}

std::optional<double> FeasibleSet::enclosing_radius() const {
    return std::visit(
        overloaded{[](const Unconstrained &) -> std::optional<double> { return std::nullopt; },
                   [](const Box &b) -> std::optional<double> {
                       return b.lower.cwiseAbs().cwiseMax(b.upper.cwiseAbs()).norm();
                   },
                   [](const Ball &b) -> std::optional<double> { return b.center.norm() + b.radius; },
                   [](const Simplex &) -> std::optional<double> { return 1.0; }},
        set_);
}

Vector project_simplex(const Vector &point) {
    const Eigen::Index n = point.size();
    Vector sorted = point;
    std::sort(sorted.data(), sorted.data() + n, std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0)
            tau = candidate;
    }
    return (point.array() - tau).cwiseMax(0.0).matrix();
}

Vector FeasibleSet::project(const Vector &point) const {
    require_dim(*this, point, "project");
    return std::visit(overloaded{[&](const Unconstrained &) -> Vector { return point; },
                                 [&](const Box &b) -> Vector {
                                     return point.cwiseMax(b.lower).cwiseMin(b.upper);
                                 },
                                 [&](const Ball &b) -> Vector {
                                     const Vector offset = point - b.center;
                                     const double norm = offset.norm();
                                     if (norm <= b.radius)
                                         return point;
                                     return b.center + (b.radius / norm) * offset;
                                 },
                                 [&](const Simplex &) -> Vector { return project_simplex(point); }},
                      set_);
}

double FeasibleSet::distance(const Vector &point) const {
    return (project(point) - point).norm();
}

bool FeasibleSet::contains(const Vector &point, double tol) const {
    if (!point.allFinite())
        return false;
    return distance(point) <= tol;
}

Vector FeasibleSet::centroid() const {
    return std::visit(overloaded{[](const Unconstrained &u) -> Vector { return Vector::Zero(u.dim); },
                                 [](const Box &b) -> Vector { return 0.5 * (b.lower + b.upper); },
                                 [](const Ball &b) -> Vector { return b.center; },
                                 [](const Simplex &s) -> Vector {
                                     return Vector::Constant(s.dim, 1.0 / static_cast<double>(s.dim));
                                 }},
                      set_);
}

Vector FeasibleSet::sample(std::mt19937_64 &rng) const {
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    boost::random::uniform_real_distribution<double> uniform(0.0, 1.0);
    return std::visit(
        overloaded{[&](const Unconstrained &u) -> Vector {
                       Vector x(u.dim);
                       for (auto &v : x)
                           v = normal(rng);
                       return x;
                   },
                   [&](const Box &b) -> Vector {
                       Vector x(b.lower.size());
                       for (Eigen::Index i = 0; i < x.size(); ++i)
                           x[i] = b.lower[i] + uniform(rng) * (b.upper[i] - b.lower[i]);
                       return x;
                   },
                   [&](const Ball &b) -> Vector {
                       const Eigen::Index n = b.center.size();
                       Vector dir(n);
                       for (auto &v : dir)
                           v = normal(rng);
                       const double norm = dir.norm();
                       if (norm == 0.0)
                           return b.center;
                       const double r = b.radius * std::pow(uniform(rng), 1.0 / static_cast<double>(n));
                       return b.center + (r / norm) * dir;
                   },
                   [&](const Simplex &s) -> Vector {
                       // Dirichlet(1, ..., 1) through normalized exponentials.
                       Vector x(s.dim);
                       for (auto &v : x)
                           v = -std::log(1.0 - uniform(rng));
                       return x / x.sum();
                   }},
        set_);
}

std::string FeasibleSet::describe() const {
    std::ostringstream os;
    std::visit(overloaded{[&](const Unconstrained &u) { os << "R^" << u.dim; },
                          [&](const Box &b) {
                              os << "box[" << b.lower.transpose() << " ; " << b.upper.transpose() << "]";
                          },
                          [&](const Ball &b) { os << "ball(r=" << b.radius << ")"; },
                          [&](const Simplex &s) { os << "simplex(" << s.dim << ")"; }},
               set_);
    return os.str();
}

Vector project_local_ball(const FeasibleSet &set, const Vector &center, const Vector &s) {
    auto project_shifted = [&](const Vector &v) -> Vector { return set.project(center + v) - center; };
    auto project_unit = [](const Vector &v) -> Vector {
        const double n = v.norm();
        return n <= 1.0 ? v : Vector(v / n);
    };

    Vector x = s;
    Vector p = Vector::Zero(s.size());
    Vector q = Vector::Zero(s.size());
    for (int sweep = 0; sweep < kDykstraSweeps; ++sweep) {
        const Vector y = project_shifted(x + p);
        p = x + p - y;
        const Vector next = project_unit(y + q);
        q = y + q - next;
        const double moved = (next - x).norm();
        x = next;
        if (moved < kDykstraExit && (y - x).norm() < kDykstraExit)
            break;
    }
    // Repair: land in the shifted set, then shrink towards 0 (feasible by convexity).
    Vector repaired = project_shifted(x);
    const double norm = repaired.norm();
    if (norm > 1.0)
        repaired /= norm;
    return repaired;
}

LocalLinearResult linear_min_local(const FeasibleSet &set, const Vector &center, const Vector &g) {
    require_dim(set, center, "linear_min_local center");
    require_dim(set, g, "linear_min_local gradient");
    if (!center.allFinite())
        throw InvalidInputError("linear_min_local: center is not finite");
    if (!g.allFinite())
        throw InvalidInputError("linear_min_local: gradient is not finite");

    LocalLinearResult result;
    Vector c = center;
    if (set.distance(c) > kFeasibilityTol) {
        c = set.project(c);
        result.center_projected = true;
        if (set.distance(c) > kFeasibilityTol)
            throw InvalidInputError("linear_min_local: center infeasible after projection");
    }

    const Eigen::Index n = set.dim();
    const double gnorm = g.norm();
    result.direction = Vector::Zero(n);
    if (gnorm == 0.0)
        return result;

    if (set.is_unconstrained()) {
        result.direction = -g / gnorm;
        result.value = -gnorm;
        return result;
    }

    if (const auto *box = std::get_if<Box>(&set.variant()); box != nullptr && n == 1) {
        const double lo = std::max(box->lower[0] - c[0], -1.0);
        const double hi = std::min(box->upper[0] - c[0], 1.0);
        // The linear objective attains its minimum at an endpoint of [lo, hi] (which contains 0).
        const double s = g[0] > 0.0 ? std::min(lo, 0.0) : std::max(hi, 0.0);
        result.direction[0] = s;
        result.value = std::min(0.0, g[0] * s);
        return result;
    }

    Vector s = Vector::Zero(n);
    Vector best = s;
    double best_value = 0.0;
    const Vector unit_descent = -g / gnorm;
    for (int k = 1; k <= kSubgradientIters; ++k) {
        const Vector next =
            project_local_ball(set, c, s + unit_descent / std::sqrt(static_cast<double>(k)));
        const double value = g.dot(next);
        if (value < best_value) {
            best_value = value;
            best = next;
        }
        // A fixed point of a projected step is optimal for a linear objective.
        const bool stalled = (next - s).norm() < 1e-13;
        s = next;
        if (stalled)
            break;
    }
    result.direction = best;
    result.value = best_value;
    return result;
}

} // namespace minimax
