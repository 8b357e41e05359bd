#include <minimax/measures.hpp>
#include <minimax/errors.hpp>

#include <algorithm>

namespace minimax {

void ProblemOracle::validate() const {
    if (!value || !grad_theta || !grad_alpha)
        throw InvalidInputError("problem '" + name + "': value and both gradients are required");
    if (l11 < 0.0 || l12 < 0.0 || l22 < 0.0)
        throw InvalidInputError("problem '" + name + "': Lipschitz constants must be nonnegative");
    if (mu && !(*mu > 0.0))
        throw InvalidInputError("problem '" + name + "': mu must be positive when present");
}

namespace {

double stationarity(const FeasibleSet &set, const Vector &point, const Vector &descent_gradient,
                    const char *which) {
    if (!descent_gradient.allFinite())
        throw NumericError(std::string(which) + ": oracle returned a non-finite gradient");
    const auto local = linear_min_local(set, point, descent_gradient);
    return std::max(0.0, -local.value);
}

} // namespace

double x_measure(const ProblemOracle &problem, const Vector &theta, const Vector &alpha) {
    return stationarity(problem.theta_set, theta, problem.grad_theta(theta, alpha), "x_measure");
}

double y_measure(const ProblemOracle &problem, const Vector &theta, const Vector &alpha) {
    // Maximization over alpha is minimization of <-grad, s>.
    return stationarity(problem.alpha_set, alpha, -problem.grad_alpha(theta, alpha), "y_measure");
}

StationarityReport measure(const ProblemOracle &problem, const Vector &theta, const Vector &alpha) {
    return {x_measure(problem, theta, alpha), y_measure(problem, theta, alpha), theta, alpha};
}

bool is_eps_fne(const StationarityReport &report, double eps) {
    if (!(eps > 0.0))
        throw InvalidInputError("is_eps_fne: eps must be positive");
    return report.x_measure <= eps && report.y_measure <= eps;
}

} // namespace minimax
