#pragma once

#include <minimax/oracle.hpp>
#include <minimax/rate_constants.hpp>
#include <minimax/trajectory.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

namespace minimax {

/// f_lambda(theta, alpha) = f(theta, alpha) - (lambda/2) ||alpha - alpha_bar||^2.
///
/// The inner problem becomes lambda-strongly concave, which makes the regularized value
/// function g_lambda(theta) = max_alpha f_lambda(theta, alpha) smooth with constant
/// l11 + l12^2 / lambda.
class RegularizedOracle {
public:
    RegularizedOracle(ProblemOracle base, double lambda, Vector alpha_bar);

    double value(const Vector &theta, const Vector &alpha) const;
    Vector grad_theta(const Vector &theta, const Vector &alpha) const;
    Vector grad_alpha(const Vector &theta, const Vector &alpha) const;

    const ProblemOracle &base() const { return base_; }
    double lambda() const { return lambda_; }
    const Vector &alpha_bar() const { return alpha_bar_; }

    /// Smoothness of f_lambda(theta, .): l22 + lambda.
    double l22_reg() const { return base_.l22 + lambda_; }
    /// Smoothness of g_lambda: l11 + l12^2 / lambda.
    double value_smoothness() const { return base_.l11 + base_.l12 * base_.l12 / lambda_; }

    /// f_lambda packaged as a ProblemOracle (same sets, l22 replaced by l22 + lambda).
    ProblemOracle as_problem() const;

private:
    ProblemOracle base_;
    double lambda_;
    Vector alpha_bar_;
};

/// Throws InvalidInputError for lambda <= 0 or an infeasible anchor.
RegularizedOracle regularize(const ProblemOracle &problem, double lambda, const Vector &alpha_bar);

/// Called with (block index, x at the end of the block) after every restart block.
using BlockObserver = std::function<void(std::size_t, const Vector &)>;

/// Accelerated projected gradient ascent on f_lambda(theta, .) with a restart every N
/// steps. Runs floor(K/N) + 1 blocks of N steps and returns the last proximal iterate.
Vector apga(const RegularizedOracle &oracle, const Vector &theta, const Vector &alpha0, double eta,
            std::size_t N, std::size_t K, const BlockObserver &on_block = {});

/// proj_Theta(theta - grad_theta f_lambda(theta, alpha) / (l11 + l12^2 / lambda)).
Vector outer_step_pgd(const RegularizedOracle &oracle, const Vector &theta, const Vector &alpha);

struct FrankWolfeStep {
    Vector theta;
    /// Local stationarity X_t of the regularized objective at the old theta.
    double x_t = 0.0;
    Vector direction;
};

/// theta + (X_t / L_tilde) s_t with (X_t, s_t) from the local linear minimization over
/// Theta. Throws ConfigurationError when X_t / L_tilde > 1.
FrankWolfeStep outer_step_fw(const RegularizedOracle &oracle, const Vector &theta,
                             const Vector &alpha, double L_tilde);

enum class OuterRule { ProjectedGradient, FrankWolfe };

struct NccConfig {
    double eps = 1e-3;
    double lambda = 0.0; ///< eps / (4R) by default
    double eta = 0.0;    ///< 1 / (l22 + lambda)
    std::size_t N = 1;   ///< restart period floor(sqrt(8 (l22 + lambda) / lambda))
    std::size_t K = 1;
    std::size_t T = 100;
    OuterRule outer_rule = OuterRule::ProjectedGradient;
    double L_tilde = 0.0; ///< Frank-Wolfe constant, >= max{L_g, l12, g_max}

    std::optional<Vector> alpha_bar; ///< defaults to the alpha set's centroid
    std::optional<Vector> theta0;
    std::optional<Vector> alpha0; ///< defaults to alpha_bar
    std::size_t measure_stride = 1;
    bool stop_at_eps = false;
    /// Use the problem's closed-form inner solver instead of APGA.
    bool exact_inner = false;
    /// Sampled midpoint-concavity check of f(theta, .) before solving.
    bool check_concavity = true;
    std::uint64_t seed = 0;

    /// lambda = eps / (4R) with R the enclosing radius of the alpha set, step and restart
    /// period from the regularized smoothness, L_tilde = max{L_g, l12, g_max}.
    /// K defaults to 4 restart blocks when zero.
    static NccConfig defaults(const ProblemOracle &problem, double eps, std::size_t K, std::size_t T,
                              OuterRule rule = OuterRule::ProjectedGradient, double g_max = 1.0);

    void validate() const;
};

/// Multi-step regularized descent ascent. Records pair theta_t with alpha_{t+1} and report
/// X/Y of the original (unregularized) game.
Trajectory solve_ncc(const ProblemOracle &problem, const NccConfig &config,
                     const RecordObserver &observer = {});

/// Number of midpoint-concavity violations of f(theta, .) over sampled
/// (theta, alpha1, alpha2) triples.
std::size_t count_concavity_violations(const ProblemOracle &problem, std::size_t triples,
                                       std::uint64_t seed);

struct NccIterationCounts {
    std::uint64_t T = 1;
    std::uint64_t K = 1;
    std::uint64_t N = 1;
    double lambda = 0.0;
    double kappa = 1.0;
};

/// lambda = eps/(4R), kappa = l22/lambda, N = floor(sqrt(8 kappa)),
/// K = ceil(sqrt(8 kappa)/log 2 * (4 log(1/eps) + log(2^17 L_bar^6 R_bar^6 Delta / (L^2 lambda)))),
/// T = ceil(32 Delta_g (g_max + L R)^2 / (L eps^2)) for projected gradient or
/// ceil(8 L_tilde Delta / eps^2) for Frank-Wolfe. L, L_tilde, L_bar are taken as given.
NccIterationCounts ncc_iteration_counts(const RateConstants &constants, double eps, OuterRule rule);

} // namespace minimax
