#pragma once

#include <minimax/types.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

namespace minimax {

struct Unconstrained {
    Eigen::Index dim = 0;
};

struct Box {
    Vector lower;
    Vector upper;
};

struct Ball {
    Vector center;
    double radius = 1.0;
};

/// Probability simplex {x >= 0, sum x = 1}.
struct Simplex {
    Eigen::Index dim = 1;
};

/// Closed convex feasible set. Construction validates the variant's invariants.
class FeasibleSet {
public:
    using Variant = std::variant<Unconstrained, Box, Ball, Simplex>;

    static FeasibleSet unconstrained(Eigen::Index dim);
    static FeasibleSet box(Vector lower, Vector upper);
    static FeasibleSet interval(double lower, double upper);
    static FeasibleSet ball(Vector center, double radius);
    static FeasibleSet simplex(Eigen::Index dim);

    Eigen::Index dim() const;
    const Variant &variant() const { return set_; }
    bool is_unconstrained() const { return std::holds_alternative<Unconstrained>(set_); }
    bool is_bounded() const { return !is_unconstrained(); }

    /// Radius of an origin-centred ball containing the set; empty when unbounded.
    std::optional<double> enclosing_radius() const;

    /// Euclidean projection.
    Vector project(const Vector &point) const;

    /// Distance from point to the set.
    double distance(const Vector &point) const;
    bool contains(const Vector &point, double tol = 1e-8) const;

    /// Centroid-like anchor: box midpoint, ball centre, uniform simplex weights, origin.
    Vector centroid() const;

    /// Draws a feasible point. Unbounded coordinates are drawn from N(0, 1).
    Vector sample(std::mt19937_64 &rng) const;

    std::string describe() const;

private:
    explicit FeasibleSet(Variant set) : set_(std::move(set)) {}
    Variant set_;
};

/// Sort-and-threshold Euclidean projection onto the probability simplex.
Vector project_simplex(const Vector &point);

struct LocalLinearResult {
    /// Minimizer s of <g, s> over {center + s in set, ||s|| <= 1}.
    Vector direction;
    /// <g, direction>; never positive.
    double value = 0.0;
    /// True when the supplied center was infeasible and had to be projected first.
    bool center_projected = false;
};

/// Local linear minimization over the intersection of a feasible set and the unit ball
/// around `center`. Closed form for unconstrained and one-dimensional boxes; otherwise
/// projected subgradient with step 1/(sqrt(k) ||g||) where each projection onto the
/// intersection runs Dykstra's alternating projections.
LocalLinearResult linear_min_local(const FeasibleSet &set, const Vector &center, const Vector &g);

/// Euclidean projection onto {center + s in set} ∩ {||s|| <= 1}, expressed in s.
/// Dykstra sweeps followed by a feasibility repair (set projection, then radial shrink),
/// so the returned point is exactly feasible even if Dykstra did not fully converge.
Vector project_local_ball(const FeasibleSet &set, const Vector &center, const Vector &s);

} // namespace minimax
