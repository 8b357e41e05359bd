#pragma once

#include <minimax/oracle.hpp>
#include <minimax/rate_constants.hpp>
#include <minimax/trajectory.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>

namespace minimax {

/// Multi-step gradient descent ascent for PL games: K plain ascent steps on the
/// unconstrained max player, then one projected descent step on theta.
struct PlConfig {
    double eps = 1e-3;
    std::size_t K = 10;
    std::size_t T = 100;
    double eta1 = 0.0; ///< inner step, 1 / l22
    double eta2 = 0.0; ///< outer step, 1 / (l11 + l12^2 / (2 mu))
    /// Start each inner loop from the previous alpha_K. When false every inner loop
    /// restarts from alpha0.
    bool warm_start = true;
    std::optional<Vector> theta0;
    std::optional<Vector> alpha0;
    std::size_t measure_stride = 1;
    /// Stop at the first measured record that is an eps-FNE.
    bool stop_at_eps = false;
    /// Abort when ||alpha|| exceeds this bound.
    double divergence_limit = 1e6;

    /// Step sizes from the problem's constants.
    static PlConfig defaults(const ProblemOracle &problem, double eps, std::size_t K, std::size_t T);

    void validate() const;
};

/// K steps of alpha <- alpha + eta1 * grad_alpha f(theta, alpha). Requires an
/// unconstrained alpha set. Throws NumericError naming the offending step on a
/// non-finite or diverging iterate.
Vector inner_ascent(const ProblemOracle &problem, const Vector &theta, const Vector &alpha0,
                    std::size_t K, double eta1, double divergence_limit = 1e6);

/// Runs T outer iterations. Each record pairs theta_t with alpha_K(theta_t).
Trajectory solve_pl(const ProblemOracle &problem, const PlConfig &config,
                    const RecordObserver &observer = {});

struct PlIterationCounts {
    std::uint64_t T = 1;
    std::uint64_t K = 1;
};

/// K = ceil((4 log(1/eps) + log(2^15 L_bar^6 R_bar^6 Delta / (L^2 mu))) / log(1/rho)),
/// T = ceil(32 Delta_g (g_max + L R)^2 / (L eps^2)); both at least 1.
/// rho == 0 (kappa == 1) means one ascent step is exact, so K = 1.
PlIterationCounts pl_iteration_counts(const RateConstants &constants, double eps);

} // namespace minimax
