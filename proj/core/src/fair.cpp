#include <minimax/fair.hpp>
#include <minimax/diagnostics.hpp>
#include <minimax/errors.hpp>
#include <minimax/problems.hpp>

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace minimax {

LossKind parse_loss_kind(const std::string &name) {
    if (name == "logistic")
        return LossKind::Logistic;
    if (name == "quadratic")
        return LossKind::Quadratic;
    if (name == "mlp" || name == "tanh_mlp")
        return LossKind::TanhMlp;
    throw InvalidInputError("unknown loss kind '" + name + "' (expected logistic, quadratic or mlp)");
}

std::string to_string(LossKind kind) {
    switch (kind) {
    case LossKind::Logistic:
        return "logistic";
    case LossKind::Quadratic:
        return "quadratic";
    case LossKind::TanhMlp:
        return "mlp";
    }
    return "unknown";
}

GroupLossModel::GroupLossModel(std::vector<LabeledGroup> groups, LossKind kind, double theta_radius)
    : groups_(std::move(groups)), kind_(kind), radius_(theta_radius) {
    if (groups_.empty())
        throw InvalidInputError("GroupLossModel: at least one group is required");
    if (!(radius_ > 0.0) || !std::isfinite(radius_))
        throw InvalidInputError("GroupLossModel: theta_radius must be positive");
    dim_ = groups_.front().features.cols();
    if (dim_ < 1)
        throw InvalidInputError("GroupLossModel: features need at least one column");
    int max_label = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const auto &group = groups_[g];
        if (group.features.rows() == 0)
            throw InvalidInputError("GroupLossModel: group " + std::to_string(g) + " is empty");
        if (group.features.cols() != dim_)
            throw InvalidInputError("GroupLossModel: group " + std::to_string(g) +
                                    " has a different feature dimension");
        if (group.labels.size() != group.features.rows())
            throw InvalidInputError("GroupLossModel: group " + std::to_string(g) +
                                    " has mismatched label count");
        if (!group.features.allFinite() || !group.labels.allFinite())
            throw InvalidInputError("GroupLossModel: non-finite data in group " + std::to_string(g));
        if (kind_ != LossKind::Quadratic) {
            for (Eigen::Index i = 0; i < group.labels.size(); ++i) {
                const double y = group.labels[i];
                if (y < 0.0 || y != std::floor(y))
                    throw InvalidInputError("GroupLossModel: class labels must be non-negative integers");
                max_label = std::max(max_label, static_cast<int>(y));
            }
        }
    }
    classes_ = kind_ == LossKind::Quadratic ? 1 : std::max(2, max_label + 1);
}

Eigen::Index GroupLossModel::theta_dim() const {
    switch (kind_) {
    case LossKind::Logistic:
        return classes_ * (dim_ + 1);
    case LossKind::Quadratic:
        return dim_;
    case LossKind::TanhMlp:
        return hidden_units * (dim_ + 1) + classes_ * (hidden_units + 1);
    }
    return 0;
}

FeasibleSet GroupLossModel::theta_set() const { return FeasibleSet::ball(Vector::Zero(theta_dim()), radius_); }

namespace {

Matrix with_bias(const Matrix &x) {
    Matrix out(x.rows(), x.cols() + 1);
    out.leftCols(x.cols()) = x;
    out.col(x.cols()).setOnes();
    return out;
}

// Mean cross-entropy of softmax(logits) against integer labels; fills dlogits with
// (softmax - onehot) / n when requested.
double cross_entropy(const Matrix &logits, const Vector &labels, Matrix *dlogits) {
    const Eigen::Index n = logits.rows();
    double total = 0.0;
    if (dlogits)
        dlogits->resize(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = logits.row(i).maxCoeff();
        const Eigen::RowVectorXd e = (logits.row(i).array() - m).exp().matrix();
        const double s = e.sum();
        const auto y = static_cast<Eigen::Index>(labels[i]);
        total += std::log(s) + m - logits(i, y);
        if (dlogits) {
            dlogits->row(i) = e / s;
            (*dlogits)(i, y) -= 1.0;
        }
    }
    if (dlogits)
        *dlogits /= static_cast<double>(n);
    return total / static_cast<double>(n);
}

} // namespace

double GroupLossModel::loss_and_grad(std::size_t group, const Vector &theta, Vector *grad) const {
    if (group >= groups_.size())
        throw InvalidInputError("GroupLossModel: group index out of range");
    if (theta.size() != theta_dim())
        throw InvalidInputError("GroupLossModel: theta has the wrong dimension");
    const auto &data = groups_[group];
    const auto n = static_cast<double>(data.features.rows());

    switch (kind_) {
    case LossKind::Quadratic: {
        const Vector r = data.features * theta - data.labels;
        if (grad)
            *grad = (2.0 / n) * (data.features.transpose() * r);
        return r.squaredNorm() / n;
    }
    case LossKind::Logistic: {
        const Matrix x = with_bias(data.features);
        const Eigen::Map<const Matrix> W(theta.data(), classes_, dim_ + 1);
        Matrix dz;
        const double loss = cross_entropy(x * W.transpose(), data.labels, grad ? &dz : nullptr);
        if (grad) {
            grad->resize(theta.size());
            Eigen::Map<Matrix>(grad->data(), classes_, dim_ + 1) = dz.transpose() * x;
        }
        return loss;
    }
    case LossKind::TanhMlp: {
        const Eigen::Index h = hidden_units;
        const Matrix x = with_bias(data.features);
        const Eigen::Map<const Matrix> W1(theta.data(), h, dim_ + 1);
        const Eigen::Map<const Matrix> W2(theta.data() + h * (dim_ + 1), classes_, h + 1);
        const Matrix hidden = (x * W1.transpose()).array().tanh().matrix();
        const Matrix hb = with_bias(hidden);
        Matrix dz;
        const double loss = cross_entropy(hb * W2.transpose(), data.labels, grad ? &dz : nullptr);
        if (grad) {
            grad->resize(theta.size());
            Eigen::Map<Matrix>(grad->data() + h * (dim_ + 1), classes_, h + 1) = dz.transpose() * hb;
            const Matrix dh = dz * W2.leftCols(h);
            const Matrix da = (dh.array() * (1.0 - hidden.array().square())).matrix();
            Eigen::Map<Matrix>(grad->data(), h, dim_ + 1) = da.transpose() * x;
        }
        return loss;
    }
    }
    return 0.0;
}

double GroupLossModel::group_loss(std::size_t group, const Vector &theta) const {
    return loss_and_grad(group, theta, nullptr);
}

Vector GroupLossModel::group_gradient(std::size_t group, const Vector &theta) const {
    Vector grad;
    loss_and_grad(group, theta, &grad);
    return grad;
}

Vector GroupLossModel::losses(const Vector &theta) const {
    Vector out(static_cast<Eigen::Index>(groups_.size()));
    for (std::size_t g = 0; g < groups_.size(); ++g)
        out[static_cast<Eigen::Index>(g)] = group_loss(g, theta);
    return out;
}

Vector GroupLossModel::weighted_gradient(const Vector &theta, const Vector &t) const {
    if (t.size() != static_cast<Eigen::Index>(groups_.size()))
        throw InvalidInputError("GroupLossModel: weight vector has the wrong dimension");
    Vector grad = Vector::Zero(theta_dim());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const double w = t[static_cast<Eigen::Index>(g)];
        if (w != 0.0)
            grad += w * group_gradient(g, theta);
    }
    return grad;
}

Vector GroupLossModel::initial_theta(std::uint64_t seed) const {
    if (kind_ != LossKind::TanhMlp)
        return Vector::Zero(theta_dim());
    std::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> normal(0.0, 0.5);
    Vector theta(theta_dim());
    for (Eigen::Index i = 0; i < theta.size(); ++i)
        theta[i] = normal(rng);
    return theta;
}

ProblemOracle fair_classification_problem(std::shared_ptr<const GroupLossModel> model, double lambda) {
    if (!model)
        throw InvalidInputError("fair_classification_problem: null model");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidInputError("fair_classification_problem: lambda must be >= 0");
    const auto m = static_cast<Eigen::Index>(model->num_groups());

    ProblemOracle p;
    p.name = "fair_" + to_string(model->kind());
    p.value = [model](const Vector &theta, const Vector &t) { return t.dot(model->losses(theta)); };
    p.grad_theta = [model](const Vector &theta, const Vector &t) { return model->weighted_gradient(theta, t); };
    p.grad_alpha = [model](const Vector &theta, const Vector &) { return model->losses(theta); };
    p.theta_set = model->theta_set();
    p.alpha_set = FeasibleSet::simplex(m);
    p.l22 = 0.0;
    if (lambda > 0.0)
        p.suggested_lambda = lambda;
    p.inner_solver = [model](const Vector &theta, double lam, const Vector &bar) {
        const Vector l = model->losses(theta);
        return lam > 0.0 ? simplex_inner_argmax(l, lam, bar) : simplex_vertex_argmax(l);
    };

    double x_max = 0.0;
    double y_max = 0.0;
    for (const auto &g : model->groups()) {
        x_max = std::max(x_max, g.features.rowwise().norm().maxCoeff());
        y_max = std::max(y_max, g.labels.cwiseAbs().maxCoeff());
    }
    const double R = model->theta_radius();
    const double root_m = std::sqrt(static_cast<double>(m));
    switch (model->kind()) {
    case LossKind::Logistic: {
        // Softmax cross-entropy has Hessian norm <= 1/2 per sample and gradient norm
        // <= sqrt(2) ||x~|| with x~ = (x, 1).
        const double xb2 = x_max * x_max + 1.0;
        p.l11 = 0.5 * xb2;
        p.l12 = root_m * std::sqrt(2.0 * xb2);
        break;
    }
    case LossKind::Quadratic:
        p.l11 = 2.0 * x_max * x_max;
        p.l12 = root_m * 2.0 * x_max * (x_max * R + y_max);
        break;
    case LossKind::TanhMlp: {
        // No usable closed form; declare twice the sampled difference quotients.
        p.l11 = 1.0;
        p.l12 = 1.0;
        const auto est = estimate_lipschitz(p, 200, 0x5eed);
        p.l11 = 2.0 * std::max(est.l11, 1e-6);
        p.l12 = 2.0 * std::max(est.l12, 1e-6);
        break;
    }
    }
    return p;
}

ProblemOracle fair_classification_problem(const GroupLossModel &model, double lambda) {
    return fair_classification_problem(std::make_shared<const GroupLossModel>(model), lambda);
}

GroupLossModel synth_fair_dataset(std::uint64_t seed, std::size_t n_per_group, LossKind kind,
                                  double theta_radius) {
    if (n_per_group < 10)
        throw InvalidInputError("synth_fair_dataset: n_per_group must be >= 10");
    struct Blob {
        double cx, cy, spread;
    };
    // Classes 0 and 2 are compact; class 1 is wide and straddles both boundaries.
    const Blob blobs[3] = {{-2.0, 0.0, 0.7}, {0.0, 0.3, 1.4}, {2.0, 0.0, 0.7}};

    std::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    std::vector<LabeledGroup> groups;
    const auto n = static_cast<Eigen::Index>(n_per_group);
    for (int c = 0; c < 3; ++c) {
        LabeledGroup g;
        g.features.resize(n, 2);
        g.labels = Vector::Constant(n, static_cast<double>(c));
        for (Eigen::Index i = 0; i < n; ++i) {
            g.features(i, 0) = blobs[c].cx + blobs[c].spread * normal(rng);
            g.features(i, 1) = blobs[c].cy + blobs[c].spread * normal(rng);
        }
        groups.push_back(std::move(g));
    }
    return GroupLossModel(std::move(groups), kind, theta_radius);
}

void write_dataset_csv(const GroupLossModel &model, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("write_dataset_csv: cannot open '" + path + "' for writing");
    out.precision(17);
    out << "group_id,label";
    for (Eigen::Index j = 0; j < model.feature_dim(); ++j)
        out << ",x" << (j + 1);
    out << '\n';
    for (std::size_t g = 0; g < model.num_groups(); ++g) {
        const auto &group = model.groups()[g];
        for (Eigen::Index i = 0; i < group.features.rows(); ++i) {
            out << g << ',' << group.labels[i];
            for (Eigen::Index j = 0; j < group.features.cols(); ++j)
                out << ',' << group.features(i, j);
            out << '\n';
        }
    }
    if (!out)
        throw InvalidInputError("write_dataset_csv: write to '" + path + "' failed");
}

GroupLossModel read_dataset_csv(const std::string &path, LossKind kind, double theta_radius) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("read_dataset_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("group_id,label", 0) != 0)
        throw InvalidInputError("read_dataset_csv: expected header 'group_id,label,x1,...'");
    const auto d = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ',') - 1);
    if (d < 1)
        throw InvalidInputError("read_dataset_csv: no feature columns");

    std::map<long, std::vector<std::vector<double>>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(cell, &used));
                if (used != cell.size())
                    throw std::invalid_argument(cell);
            } catch (const std::exception &) {
                throw InvalidInputError("read_dataset_csv: bad number '" + cell + "' on line " +
                                        std::to_string(line_no));
            }
        }
        if (static_cast<Eigen::Index>(values.size()) != d + 2)
            throw InvalidInputError("read_dataset_csv: wrong column count on line " + std::to_string(line_no));
        if (values[0] < 0 || values[0] != std::floor(values[0]))
            throw InvalidInputError("read_dataset_csv: bad group id on line " + std::to_string(line_no));
        rows[static_cast<long>(values[0])].push_back(std::move(values));
    }
    std::vector<LabeledGroup> groups;
    long expected = 0;
    for (auto &[id, group_rows] : rows) {
        if (id != expected++)
            throw InvalidInputError("read_dataset_csv: group ids must be 0, 1, ..., m-1");
        LabeledGroup g;
        const auto n = static_cast<Eigen::Index>(group_rows.size());
        g.features.resize(n, d);
        g.labels.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            g.labels[i] = group_rows[static_cast<std::size_t>(i)][1];
            for (Eigen::Index j = 0; j < d; ++j)
                g.features(i, j) = group_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 2)];
        }
        groups.push_back(std::move(g));
    }
    return GroupLossModel(std::move(groups), kind, theta_radius);
}

FairTrainingResult train_fair(const GroupLossModel &model, const FairTrainingConfig &config) {
    if (!(config.step > 0.0))
        throw InvalidInputError("train_fair: step must be positive");
    if (config.mode == FairTrainingMode::MinMaxRegularized && !(config.lambda > 0.0))
        throw InvalidInputError("train_fair: regularized mode needs lambda > 0");
    const FeasibleSet set = model.theta_set();
    const auto m = static_cast<Eigen::Index>(model.num_groups());
    const Vector uniform = Vector::Constant(m, 1.0 / static_cast<double>(m));

    FairTrainingResult result;
    Vector theta = set.project(config.theta0.value_or(model.initial_theta(0)));
    Vector losses = model.losses(theta);
    result.worst_group_loss.reserve(config.iterations + 1);
    result.worst_group_loss.push_back(losses.maxCoeff());
    for (std::size_t k = 0; k < config.iterations; ++k) {
        Vector t;
        switch (config.mode) {
        case FairTrainingMode::Average:
            t = uniform;
            break;
        case FairTrainingMode::MinMax:
            t = simplex_vertex_argmax(losses);
            break;
        case FairTrainingMode::MinMaxRegularized:
            t = simplex_inner_argmax(losses, config.lambda, uniform);
            break;
        }
        theta = set.project(theta - config.step * model.weighted_gradient(theta, t));
        if (!theta.allFinite())
            throw NumericError("train_fair: non-finite weights", k);
        losses = model.losses(theta);
        result.worst_group_loss.push_back(losses.maxCoeff());
    }
    result.theta = theta;
    result.final_losses = losses;
    return result;
}

double total_variation(const std::vector<double> &series) {
    double tv = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k)
        tv += std::abs(series[k] - series[k - 1]);
    return tv;
}

} // namespace minimax
