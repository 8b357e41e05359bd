#include <minimax/harness.hpp>
#include <minimax/errors.hpp>
#include <minimax/fair.hpp>
#include <minimax/measures.hpp>
#include <minimax/pl_gda.hpp>
#include <minimax/problems.hpp>

#include "detail.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace minimax {

using json = nlohmann::json;
namespace fs = std::filesystem;

const char *const trajectory_csv_header = "iter,x_measure,y_measure,f_value,g_lambda_value,step_norm,wall_ns";

std::string to_string(SolverKind kind) { return kind == SolverKind::Pl ? "pl" : "ncc"; }
std::string to_string(RunMode mode) { return mode == RunMode::Theory ? "theory" : "practical"; }
std::string to_string(OuterRule rule) { return rule == OuterRule::FrankWolfe ? "fw" : "pgd"; }

// ---------------------------------------------------------------------------------------
// Problem registry

std::vector<std::string> problem_names() {
    return {"quadratic_saddle", "abs_value", "pl_hyperplane", "coupled_quadratic", "fair"};
}

BuiltProblem make_problem(const std::string &name, const ProblemParams &params, std::uint64_t seed) {
    BuiltProblem built;
    if (name == "quadratic_saddle") {
        built.oracle = quadratic_saddle();
    } else if (name == "abs_value") {
        built.oracle = abs_value_game();
    } else if (name == "pl_hyperplane") {
        if (params.a.empty())
            throw InvalidInputError("pl_hyperplane: parameter 'a' must be non-empty");
        const Vector a = Eigen::Map<const Vector>(params.a.data(), static_cast<Eigen::Index>(params.a.size()));
        built.oracle = pl_hyperplane_game(a, FeasibleSet::interval(params.theta_lower, params.theta_upper));
    } else if (name == "coupled_quadratic") {
        built.oracle = coupled_quadratic();
    } else if (name == "fair") {
        const LossKind kind = parse_loss_kind(params.loss);
        auto model = std::make_shared<const GroupLossModel>(
            params.dataset_csv.empty()
                ? synth_fair_dataset(seed, params.n_per_group, kind, params.theta_radius)
                : read_dataset_csv(params.dataset_csv, kind, params.theta_radius));
        built.oracle = fair_classification_problem(model, params.fair_lambda);
        if (kind == LossKind::TanhMlp)
            built.theta0 = model->initial_theta(seed);
    } else {
        std::string known;
        for (const auto &n : problem_names())
            known += (known.empty() ? "" : ", ") + n;
        throw InvalidInputError("unknown problem '" + name + "' (known: " + known + ")");
    }
    return built;
}

// ---------------------------------------------------------------------------------------
// Configuration

namespace {

template <class T>
T get_as(const json &j, const char *key) {
    try {
        return j.get<T>();
    } catch (const json::exception &) {
        throw InvalidInputError(std::string("config: field '") + key + "' has the wrong type");
    }
}

std::size_t get_count(const json &j, const char *key) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw InvalidInputError(std::string("config: field '") + key + "' must be a non-negative integer");
    return j.get<std::size_t>();
}

void parse_params(const json &j, ProblemParams &p) {
    for (const auto &[key, value] : j.items()) {
        if (key == "name")
            continue;
        if (key == "a")
            p.a = get_as<std::vector<double>>(value, "a");
        else if (key == "theta_lower")
            p.theta_lower = get_as<double>(value, "theta_lower");
        else if (key == "theta_upper")
            p.theta_upper = get_as<double>(value, "theta_upper");
        else if (key == "n_per_group")
            p.n_per_group = get_count(value, "n_per_group");
        else if (key == "loss")
            p.loss = get_as<std::string>(value, "loss");
        else if (key == "lambda")
            p.fair_lambda = get_as<double>(value, "lambda");
        else if (key == "theta_radius")
            p.theta_radius = get_as<double>(value, "theta_radius");
        else if (key == "dataset_csv")
            p.dataset_csv = get_as<std::string>(value, "dataset_csv");
        else
            throw InvalidInputError("config: unknown problem parameter '" + key + "'");
    }
}

template <class T>
json optional_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

json config_json(const RunConfig &c, bool with_output) {
    json problem = {
        {"name", c.problem},
        {"a", c.params.a},
        {"theta_lower", c.params.theta_lower},
        {"theta_upper", c.params.theta_upper},
        {"n_per_group", c.params.n_per_group},
        {"loss", c.params.loss},
        {"lambda", c.params.fair_lambda},
        {"theta_radius", c.params.theta_radius},
        {"dataset_csv", c.params.dataset_csv},
    };
    json j = {
        {"problem", problem},
        {"solver", to_string(c.solver)},
        {"outer", to_string(c.outer)},
        {"mode", to_string(c.mode)},
        {"eps", c.eps},
        {"K", optional_json(c.K)},
        {"T", optional_json(c.T)},
        {"N", optional_json(c.N)},
        {"lambda", optional_json(c.lambda)},
        {"eta", optional_json(c.eta)},
        {"theta0", optional_json(c.theta0)},
        {"alpha0", optional_json(c.alpha0)},
        {"seed", c.seed},
        {"measure_stride", c.measure_stride},
        {"stop_at_eps", optional_json(c.stop_at_eps)},
        {"exact_inner", c.exact_inner},
        {"warm_start", c.warm_start},
        {"timing", c.timing},
        {"max_iterations", c.max_iterations},
        {"estimate_samples", c.estimate_samples},
    };
    if (with_output)
        j["out_dir"] = c.out_dir;
    return j;
}

RunConfig config_from(const json &j) {
    if (!j.is_object())
        throw InvalidInputError("config: top level must be a JSON object");
    RunConfig c;
    for (const auto &[key, value] : j.items()) {
        if (key == "problem") {
            if (value.is_string()) {
                c.problem = value.get<std::string>();
            } else if (value.is_object() && value.contains("name") && value["name"].is_string()) {
                c.problem = value["name"].get<std::string>();
                parse_params(value, c.params);
            } else {
                throw InvalidInputError("config: 'problem' must be a name or an object with a 'name'");
            }
        } else if (key == "solver") {
            const auto s = get_as<std::string>(value, "solver");
            if (s != "pl" && s != "ncc")
                throw InvalidInputError("config: solver must be 'pl' or 'ncc'");
            c.solver = s == "pl" ? SolverKind::Pl : SolverKind::Ncc;
        } else if (key == "outer") {
            const auto s = get_as<std::string>(value, "outer");
            if (s != "pgd" && s != "fw")
                throw InvalidInputError("config: outer must be 'pgd' or 'fw'");
            c.outer = s == "fw" ? OuterRule::FrankWolfe : OuterRule::ProjectedGradient;
        } else if (key == "mode") {
            const auto s = get_as<std::string>(value, "mode");
            if (s != "theory" && s != "practical")
                throw InvalidInputError("config: mode must be 'theory' or 'practical'");
            c.mode = s == "theory" ? RunMode::Theory : RunMode::Practical;
        } else if (key == "eps") {
            c.eps = get_as<double>(value, "eps");
        } else if (key == "K" || key == "T" || key == "N") {
            std::optional<std::size_t> v;
            if (!value.is_null())
                v = get_count(value, key.c_str());
            (key == "K" ? c.K : key == "T" ? c.T : c.N) = v;
        } else if (key == "lambda" || key == "eta") {
            std::optional<double> v;
            if (!value.is_null())
                v = get_as<double>(value, key.c_str());
            (key == "lambda" ? c.lambda : c.eta) = v;
        } else if (key == "theta0" || key == "alpha0") {
            std::optional<std::vector<double>> v;
            if (!value.is_null())
                v = get_as<std::vector<double>>(value, key.c_str());
            (key == "theta0" ? c.theta0 : c.alpha0) = v;
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0))
                throw InvalidInputError("config: seed must be a non-negative integer");
            c.seed = value.get<std::uint64_t>();
        } else if (key == "out_dir") {
            c.out_dir = get_as<std::string>(value, "out_dir");
        } else if (key == "measure_stride") {
            c.measure_stride = get_count(value, "measure_stride");
        } else if (key == "stop_at_eps") {
            if (!value.is_null())
                c.stop_at_eps = get_as<bool>(value, "stop_at_eps");
        } else if (key == "exact_inner") {
            c.exact_inner = get_as<bool>(value, "exact_inner");
        } else if (key == "warm_start") {
            c.warm_start = get_as<bool>(value, "warm_start");
        } else if (key == "timing") {
            c.timing = get_as<bool>(value, "timing");
        } else if (key == "max_iterations") {
            c.max_iterations = get_count(value, "max_iterations");
        } else if (key == "estimate_samples") {
            c.estimate_samples = get_count(value, "estimate_samples");
        } else if (key == "name") {
            // Suite entries carry a display name; it does not affect the run.
        } else {
            throw InvalidInputError("config: unknown field '" + key + "'");
        }
    }
    return c;
}

std::string sha256_hex(const std::string &text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static const char *hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

} // namespace

RunConfig RunConfig::from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidInputError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from(j);
}

RunConfig RunConfig::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string RunConfig::to_json() const { return config_json(*this, true).dump(); }

std::string RunConfig::hash() const { return sha256_hex(config_json(*this, false).dump()); }

void RunConfig::validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw InvalidInputError("config: eps must be positive");
    if (mode == RunMode::Theory && !(eps < 1.0))
        throw InvalidInputError("config: eps must lie in (0, 1) in theory mode");
    if (measure_stride < 1)
        throw InvalidInputError("config: measure_stride must be >= 1");
    if (T && *T < 1)
        throw InvalidInputError("config: T must be >= 1");
    if (N && *N < 1)
        throw InvalidInputError("config: N must be >= 1");
    if (lambda && !(*lambda > 0.0))
        throw InvalidInputError("config: lambda must be positive");
    if (eta && !(*eta > 0.0))
        throw InvalidInputError("config: eta must be positive");
    if (max_iterations < 1)
        throw InvalidInputError("config: max_iterations must be >= 1");
    if (estimate_samples < 2)
        throw InvalidInputError("config: estimate_samples must be >= 2");
    const auto names = problem_names();
    if (std::find(names.begin(), names.end(), problem) == names.end())
        throw InvalidInputError("config: unknown problem '" + problem + "'");
}

// ---------------------------------------------------------------------------------------
// Report

namespace {

json vector_json(const Vector &v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json constants_json(const RateConstants &c) {
    return {
        {"l11", c.l11},   {"l12", c.l12},         {"l22", c.l22},     {"mu", optional_json(c.mu)},
        {"lambda", optional_json(c.lambda)},      {"R", c.R},         {"Delta", c.Delta},
        {"Delta_g", c.Delta_g},                   {"g_max", c.g_max}, {"kappa", c.kappa},
        {"rho", c.rho},   {"L", c.L},             {"L_tilde", c.L_tilde},
        {"L_bar", c.L_bar},                       {"R_bar", c.R_bar}, {"delta", c.delta},
    };
}

} // namespace

std::string RunReport::to_json() const {
    json j = {
        {"problem", problem},
        {"solver", to_string(solver)},
        {"mode", to_string(mode)},
        {"outer", to_string(outer)},
        {"eps", eps},
        {"constants", constants ? constants_json(*constants) : json(nullptr)},
        {"estimates",
         {{"Delta", estimates.Delta},
          {"Delta_g", estimates.Delta_g},
          {"g_theta", estimates.g_theta},
          {"g_alpha", estimates.g_alpha},
          {"g_max", estimates.g_max}}},
        {"lipschitz_estimates", {{"l11", lipschitz.l11}, {"l12", lipschitz.l12}, {"l22", lipschitz.l22}}},
        {"parameters", {{"K", K}, {"T", T}, {"N", N}, {"lambda", lambda}, {"eta", eta}}},
        {"iterations", iterations},
        {"records", trajectory.size()},
        {"wall_time_ns", wall_time_ns},
        {"verdict", verdict},
        {"config_hash", config_hash},
        {"seed", seed},
        {"warnings", warnings},
    };
    if (!trajectory.empty()) {
        j["best"] = {
            {"iter", best.iter},
            {"theta", vector_json(best.theta)},
            {"alpha", vector_json(best.alpha)},
            {"x_measure", best.x_measure},
            {"y_measure", best.y_measure},
            {"f_value", best.f_value},
        };
    } else {
        j["best"] = nullptr;
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------------------
// Run

namespace {

class CsvWriter {
public:
    CsvWriter(const std::string &path, bool timing) : timing_(timing) {
        if (path.empty())
            return;
        file_ = std::fopen(path.c_str(), "w");
        if (!file_)
            throw InvalidInputError("cannot open '" + path + "' for writing");
        std::fprintf(file_, "%s\n", trajectory_csv_header);
    }
    CsvWriter(const CsvWriter &) = delete;
    CsvWriter &operator=(const CsvWriter &) = delete;
    ~CsvWriter() { close(); }

    void write(const IterationRecord &r) {
        if (!file_)
            return;
        std::fprintf(file_, "%zu,%.17g,%.17g,%.17g,", r.iter, r.x_measure, r.y_measure, r.f_value);
        if (r.g_lambda_value)
            std::fprintf(file_, "%.17g", *r.g_lambda_value);
        std::fprintf(file_, ",%.17g,%lld\n", r.step_norm,
                     static_cast<long long>(timing_ ? r.wall_time_ns : 0));
    }

    void close() {
        if (file_) {
            std::fflush(file_);
            std::fclose(file_);
            file_ = nullptr;
        }
    }

private:
    std::FILE *file_ = nullptr;
    bool timing_;
};

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInputError("cannot open '" + path + "' for writing");
    out << text << '\n';
}

std::size_t capped(std::uint64_t count, std::size_t cap, const char *what, std::vector<std::string> &warnings) {
    if (count > cap) {
        warnings.push_back(std::string("theory ") + what + " = " + std::to_string(count) +
                           " truncated to max_iterations = " + std::to_string(cap));
        return cap;
    }
    return static_cast<std::size_t>(count);
}

} // namespace

RunReport run(const RunConfig &config) {
    config.validate();

    RunReport report;
    report.problem = config.problem;
    report.solver = config.solver;
    report.mode = config.mode;
    report.outer = config.outer;
    report.eps = config.eps;
    report.seed = config.seed;
    report.config_hash = config.hash();

    // One generator feeds every sampling step, in a fixed order.
    std::mt19937_64 seeder(config.seed);
    const std::uint64_t lipschitz_seed = seeder();
    const std::uint64_t estimate_seed = seeder();
    const std::uint64_t concavity_seed = seeder();

    const BuiltProblem built = make_problem(config.problem, config.params, config.seed);
    const ProblemOracle &problem = built.oracle;
    problem.validate();

    report.lipschitz = estimate_lipschitz(problem, config.estimate_samples, lipschitz_seed);
    for (const auto &w : report.lipschitz.warnings)
        report.warnings.push_back(w);

    auto to_vector = [](const std::vector<double> &v) {
        return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    Vector theta0 = built.theta0.value_or(problem.theta_set.centroid());
    if (config.theta0)
        theta0 = to_vector(*config.theta0);
    if (theta0.size() != problem.theta_dim())
        throw InvalidInputError("config: theta0 has dimension " + std::to_string(theta0.size()) + ", expected " +
                                std::to_string(problem.theta_dim()));
    theta0 = problem.theta_set.project(theta0);
    std::optional<Vector> alpha_start;
    if (config.alpha0) {
        alpha_start = to_vector(*config.alpha0);
        if (alpha_start->size() != problem.alpha_dim())
            throw InvalidInputError("config: alpha0 has the wrong dimension");
        alpha_start = problem.alpha_set.project(*alpha_start);
    }
    const bool stop = config.stop_at_eps.value_or(config.mode == RunMode::Practical);
    const bool theory = config.mode == RunMode::Theory;
    const bool has_constants = config.eps < 1.0;
    if (!has_constants)
        report.warnings.push_back("eps >= 1: rate constants and iteration counts are not computed");

    std::string csv_path;
    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        csv_path = (fs::path(config.out_dir) / "trajectory.csv").string();
        report.trajectory_path = csv_path;
        report.report_path = (fs::path(config.out_dir) / "report.json").string();
    }

    std::function<Trajectory(const RecordObserver &)> solve;
    PlConfig pl;
    NccConfig ncc;

    if (config.solver == SolverKind::Pl) {
        if (!problem.mu)
            throw InvalidInputError("run: problem '" + problem.name + "' has no PL constant; use the ncc solver");
        if (!problem.theta_set.is_bounded() || !problem.alpha_set.is_unconstrained())
            throw InvalidInputError("run: the pl solver needs a bounded theta set and an unconstrained alpha");
        const double R = *problem.theta_set.enclosing_radius();
        const Vector alpha0 = alpha_start.value_or(Vector::Zero(problem.alpha_dim()));
        const std::size_t pilot_K = config.K.value_or(10);
        report.estimates = estimate_constants(problem, theta0, alpha0, 0.0, alpha0, 10 * std::max<std::size_t>(pilot_K, 1),
                                              config.estimate_samples, estimate_seed);

        std::optional<PlIterationCounts> counts;
        if (has_constants) {
            report.constants = pl_rate_constants(problem, config.eps, std::max(R, 1e-12), report.estimates.Delta,
                                                 report.estimates.Delta_g, report.estimates.g_max);
            counts = pl_iteration_counts(*report.constants, config.eps);
        }
        std::size_t K = 10;
        std::size_t T = 1000;
        if (counts) {
            K = capped(counts->K, config.max_iterations, "K", report.warnings);
            if (theory)
                T = capped(counts->T, config.max_iterations, "T", report.warnings);
        }
        K = config.K.value_or(K);
        T = std::min(config.T.value_or(T), config.max_iterations);

        pl = PlConfig::defaults(problem, config.eps, K, T);
        if (config.eta)
            pl.eta1 = *config.eta;
        pl.warm_start = config.warm_start;
        pl.theta0 = theta0;
        pl.alpha0 = alpha0;
        pl.measure_stride = config.measure_stride;
        pl.stop_at_eps = stop;
        report.K = pl.K;
        report.T = pl.T;
        report.N = 0;
        report.eta = pl.eta1;
        solve = [&](const RecordObserver &obs) { return solve_pl(problem, pl, obs); };
    } else {
        if (!problem.alpha_set.is_bounded())
            throw InvalidInputError("run: the ncc solver needs a bounded alpha set");
        double R = *problem.alpha_set.enclosing_radius();
        if (const auto Rt = problem.theta_set.enclosing_radius())
            R = std::max(R, *Rt);
        R = std::max(R, 1e-12);
        const double lambda = config.lambda.value_or(problem.suggested_lambda.value_or(config.eps / (4.0 * R)));
        const Vector alpha_bar = problem.alpha_set.project(problem.alpha_set.centroid());

        ncc = NccConfig::defaults(problem, config.eps, 0, 1, config.outer);
        ncc.lambda = lambda;
        const double l22_reg = problem.l22 + lambda;
        ncc.eta = config.eta.value_or(1.0 / l22_reg);
        ncc.N = config.N.value_or(
            std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(8.0 * l22_reg / lambda) + 1e-9))));

        const std::size_t pilot_K = config.K.value_or(4 * ncc.N);
        const Vector alpha0 = alpha_start.value_or(alpha_bar);
        report.estimates = estimate_constants(problem, theta0, alpha0, lambda, alpha_bar, 10 * pilot_K,
                                              config.estimate_samples, estimate_seed);
        const double L_g = problem.l11 + problem.l12 * problem.l12 / lambda;
        ncc.L_tilde = std::max({L_g, problem.l12, report.estimates.g_max});

        std::size_t K = 4 * ncc.N;
        std::size_t T = 1000;
        if (has_constants) {
            report.constants = ncc_rate_constants(problem, config.eps, R, report.estimates.Delta,
                                                  report.estimates.Delta_g, report.estimates.g_max);
            if (std::abs(*report.constants->lambda - lambda) > 1e-12 * lambda)
                report.warnings.push_back("lambda differs from eps/(4R); theory counts assume eps/(4R)");
            const auto counts = ncc_iteration_counts(*report.constants, config.eps, config.outer);
            if (theory) {
                K = capped(counts.K, config.max_iterations, "K", report.warnings);
                T = capped(counts.T, config.max_iterations, "T", report.warnings);
            }
        }
        ncc.K = std::max(config.K.value_or(K), ncc.N);
        if (config.K && *config.K < ncc.N)
            report.warnings.push_back("K raised to the restart period N");
        ncc.T = std::min(config.T.value_or(T), config.max_iterations);
        ncc.alpha_bar = alpha_bar;
        ncc.theta0 = theta0;
        ncc.alpha0 = alpha0;
        ncc.measure_stride = config.measure_stride;
        ncc.stop_at_eps = stop;
        ncc.exact_inner = config.exact_inner;
        ncc.seed = concavity_seed;
        report.K = ncc.K;
        report.T = ncc.T;
        report.N = ncc.N;
        report.lambda = ncc.lambda;
        report.eta = ncc.eta;
        solve = [&](const RecordObserver &obs) { return solve_ncc(problem, ncc, obs); };
    }

    CsvWriter csv(csv_path, config.timing);
    const std::string context = "run(" + config.problem + ", " + to_string(config.solver) + ")";
    detail::Stopwatch clock;
    auto fail = [&](const std::string &message) {
        csv.close();
        if (!report.report_path.empty()) {
            json j = json::parse(report.to_json());
            j["error"] = message;
            write_text(report.report_path, j.dump(2));
        }
    };
    try {
        report.trajectory = solve([&](const IterationRecord &r) { csv.write(r); });
    } catch (const NumericError &e) {
        fail(e.what());
        throw e.with_context(context);
    } catch (const ConfigurationError &e) {
        fail(e.what());
        throw ConfigurationError(context + ": " + e.what());
    } catch (const InvalidInputError &e) {
        fail(e.what());
        throw InvalidInputError(context + ": " + e.what());
    }
    csv.close();
    report.wall_time_ns = clock.elapsed_ns();

    for (const auto &w : report.trajectory.warnings)
        report.warnings.push_back(w);
    report.iterations = report.trajectory.iterations;
    report.best = report.trajectory.best();
    report.verdict = is_eps_fne(measure(problem, report.best.theta, report.best.alpha), config.eps);

    if (!report.report_path.empty())
        write_text(report.report_path, report.to_json());
    return report;
}

// ---------------------------------------------------------------------------------------
// Suites

SuiteResult run_suite(const std::string &path, std::optional<std::size_t> threads) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("suite: cannot open '" + path + "'");
    json suite;
    try {
        suite = json::parse(in);
    } catch (const json::parse_error &e) {
        throw InvalidInputError(std::string("suite: invalid JSON: ") + e.what());
    }
    if (!suite.is_object() || !suite.contains("runs") || !suite["runs"].is_array())
        throw InvalidInputError("suite: expected an object with a 'runs' array");
    for (const auto &[key, value] : suite.items()) {
        if (key != "runs" && key != "out_dir" && key != "threads")
            throw InvalidInputError("suite: unknown field '" + key + "'");
    }
    const std::string out_dir = suite.value("out_dir", std::string("bench_out"));
    std::size_t workers = threads.value_or(suite.contains("threads") ? get_count(suite["threads"], "threads") : 1);
    workers = std::max<std::size_t>(1, workers);

    // Parse everything up front so a malformed entry fails before any run starts.
    std::vector<RunConfig> configs;
    SuiteResult result;
    for (std::size_t i = 0; i < suite["runs"].size(); ++i) {
        const json &entry = suite["runs"][i];
        RunConfig c = config_from(entry);
        SuiteEntry e;
        e.name = entry.contains("name") && entry["name"].is_string() ? entry["name"].get<std::string>()
                                                                     : "run_" + std::to_string(i);
        c.out_dir = (fs::path(out_dir) / (std::to_string(i) + "_" + e.name)).string();
        c.validate();
        configs.push_back(std::move(c));
        result.entries.push_back(std::move(e));
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                result.entries[i].report = run(configs[i]);
            } catch (const std::exception &e) {
                result.entries[i].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, configs.size()); ++w)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();

    json summary = json::array();
    for (const auto &e : result.entries) {
        json row = {{"name", e.name}};
        if (e.report) {
            row["verdict"] = e.report->verdict;
            row["iterations"] = e.report->iterations;
            row["best_x"] = e.report->best.x_measure;
            row["best_y"] = e.report->best.y_measure;
            row["wall_time_ns"] = e.report->wall_time_ns;
            row["report"] = e.report->report_path;
        } else {
            row["error"] = e.error;
        }
        summary.push_back(std::move(row));
    }
    fs::create_directories(out_dir);
    result.summary_path = (fs::path(out_dir) / "summary.json").string();
    write_text(result.summary_path, summary.dump(2));
    return result;
}

} // namespace minimax
