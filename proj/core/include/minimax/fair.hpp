#pragma once

#include <minimax/oracle.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace minimax {

/// Samples of one category: features are n x d, labels hold class indices (logistic and
/// MLP losses) or regression targets (quadratic loss).
struct LabeledGroup {
    Matrix features;
    Vector labels;
};

enum class LossKind {
    /// Multinomial logistic regression with a bias column. Convex in the weights.
    Logistic,
    /// Mean squared residual of a linear model on the raw features (no bias column).
    Quadratic,
    /// One hidden layer of 8 tanh units followed by a softmax layer.
    TanhMlp,
};

LossKind parse_loss_kind(const std::string &name);
std::string to_string(LossKind kind);

/// Per-group empirical losses l_i(theta) of a shared model. Immutable after construction.
class GroupLossModel {
public:
    static constexpr int hidden_units = 8;

    GroupLossModel(std::vector<LabeledGroup> groups, LossKind kind, double theta_radius = 10.0);

    LossKind kind() const { return kind_; }
    std::size_t num_groups() const { return groups_.size(); }
    const std::vector<LabeledGroup> &groups() const { return groups_; }
    Eigen::Index feature_dim() const { return dim_; }
    int num_classes() const { return classes_; }
    Eigen::Index theta_dim() const;
    double theta_radius() const { return radius_; }

    /// Theta is restricted to the origin-centred ball of radius theta_radius.
    FeasibleSet theta_set() const;

    double group_loss(std::size_t group, const Vector &theta) const;
    Vector group_gradient(std::size_t group, const Vector &theta) const;
    /// (l_1, ..., l_m).
    Vector losses(const Vector &theta) const;
    /// sum_i t_i grad l_i(theta).
    Vector weighted_gradient(const Vector &theta, const Vector &t) const;

    /// Zero for the convex losses; a small seeded random start for the MLP, whose
    /// all-zero point is a symmetric stationary point.
    Vector initial_theta(std::uint64_t seed) const;

private:
    double loss_and_grad(std::size_t group, const Vector &theta, Vector *grad) const;

    std::vector<LabeledGroup> groups_;
    LossKind kind_;
    double radius_;
    Eigen::Index dim_ = 0;
    int classes_ = 0;
};

/// min over theta, max over t in the simplex of sum_i t_i l_i(theta). The oracle itself
/// is unregularized; lambda is exposed as suggested_lambda and the closed-form inner
/// solver returns the KKT solution for any requested regularization.
ProblemOracle fair_classification_problem(std::shared_ptr<const GroupLossModel> model, double lambda);
ProblemOracle fair_classification_problem(const GroupLossModel &model, double lambda);

/// Three 2-D Gaussian blobs, one per class and group. The middle class is wider and
/// sits between the other two, so average-loss training gives it up. Deterministic per
/// seed. Requires n_per_group >= 10.
GroupLossModel synth_fair_dataset(std::uint64_t seed, std::size_t n_per_group,
                                  LossKind kind = LossKind::Logistic, double theta_radius = 10.0);

/// CSV with header "group_id,label,x1,x2,...". Group ids must be 0, 1, ..., m-1.
void write_dataset_csv(const GroupLossModel &model, const std::string &path);
GroupLossModel read_dataset_csv(const std::string &path, LossKind kind, double theta_radius = 10.0);

enum class FairTrainingMode {
    /// Uniform weights: plain empirical risk over the groups.
    Average,
    /// Weights at the vertex of the worst group (lowest index on ties).
    MinMax,
    /// Weights from the regularized KKT solution anchored at the uniform vector.
    MinMaxRegularized,
};

struct FairTrainingConfig {
    FairTrainingMode mode = FairTrainingMode::Average;
    std::size_t iterations = 500;
    double step = 0.5;
    double lambda = 0.1;
    std::optional<Vector> theta0;
};

struct FairTrainingResult {
    Vector theta;
    Vector final_losses;
    /// max_i l_i(theta_t) for t = 0..iterations (initial point included).
    std::vector<double> worst_group_loss;
};

/// Projected gradient descent on sum_i t_i l_i(theta) with t recomputed from the current
/// losses every step.
FairTrainingResult train_fair(const GroupLossModel &model, const FairTrainingConfig &config);

/// sum_k |s_{k+1} - s_k|.
double total_variation(const std::vector<double> &series);

} // namespace minimax
