#pragma once

#include <minimax/oracle.hpp>

namespace minimax {

/// First-order stationarity of both players at (theta, alpha).
struct StationarityReport {
    double x_measure = 0.0;
    double y_measure = 0.0;
    Vector point_theta;
    Vector point_alpha;

    double worst() const { return x_measure > y_measure ? x_measure : y_measure; }
};

/// -min <grad_theta f, s> over {theta + s in Theta, ||s|| <= 1}. Equals ||grad_theta f||
/// when Theta is unconstrained.
double x_measure(const ProblemOracle &problem, const Vector &theta, const Vector &alpha);

/// max <grad_alpha f, s> over {alpha + s in A, ||s|| <= 1}.
double y_measure(const ProblemOracle &problem, const Vector &theta, const Vector &alpha);

StationarityReport measure(const ProblemOracle &problem, const Vector &theta, const Vector &alpha);

/// True iff both measures are <= eps. No slack is applied.
bool is_eps_fne(const StationarityReport &report, double eps);

} // namespace minimax
