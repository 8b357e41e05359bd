#pragma once

#include <minimax/diagnostics.hpp>
#include <minimax/ncc.hpp>
#include <minimax/oracle.hpp>
#include <minimax/rate_constants.hpp>
#include <minimax/trajectory.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minimax {

/// Parameters of the built-in problems; each problem reads the fields it needs.
struct ProblemParams {
    std::vector<double> a{1.0, 1.0};  ///< pl_hyperplane direction
    double theta_lower = -1.0;        ///< pl_hyperplane theta interval
    double theta_upper = 1.0;
    std::size_t n_per_group = 200;    ///< fair: synthetic group size
    std::string loss = "logistic";    ///< fair: logistic | quadratic | mlp
    double fair_lambda = 0.1;         ///< fair: suggested regularization
    double theta_radius = 10.0;       ///< fair: radius of the weight ball
    std::string dataset_csv;          ///< fair: load data instead of synthesizing
};

struct BuiltProblem {
    ProblemOracle oracle;
    std::optional<Vector> theta0;
};

/// Names accepted by make_problem.
std::vector<std::string> problem_names();

/// Builds a registered problem. Throws InvalidInputError for unknown names.
BuiltProblem make_problem(const std::string &name, const ProblemParams &params, std::uint64_t seed);

enum class SolverKind { Pl, Ncc };
/// Theory mode takes K and T from the iteration-count formulas; practical mode uses
/// user budgets and stops at the first eps-FNE.
enum class RunMode { Theory, Practical };

struct RunConfig {
    std::string problem = "quadratic_saddle";
    ProblemParams params;
    SolverKind solver = SolverKind::Ncc;
    OuterRule outer = OuterRule::ProjectedGradient;
    RunMode mode = RunMode::Practical;
    double eps = 1e-3;

    std::optional<std::size_t> K;
    std::optional<std::size_t> T;
    std::optional<std::size_t> N;
    std::optional<double> lambda;
    std::optional<double> eta;

    /// Starting points; default to the projected centroid of each set (zero for an
    /// unconstrained alpha) or the problem's own initializer.
    std::optional<std::vector<double>> theta0;
    std::optional<std::vector<double>> alpha0;

    std::uint64_t seed = 0;
    std::string out_dir; ///< empty: no files are written
    std::size_t measure_stride = 1;
    /// Defaults to true in practical mode and false in theory mode.
    std::optional<bool> stop_at_eps;
    bool exact_inner = false;
    bool warm_start = true;
    /// Write real timings to the wall_ns column. Off by default so that repeated runs
    /// produce identical files.
    bool timing = false;
    /// Upper bound on T; theory-mode counts above it are truncated with a warning.
    std::size_t max_iterations = 1000000;
    std::size_t estimate_samples = 100;

    /// Strict parse: unknown keys and malformed values throw InvalidInputError.
    static RunConfig from_json(const std::string &text);
    static RunConfig load(const std::string &path);

    /// Canonical JSON (sorted keys, every field present).
    std::string to_json() const;
    /// SHA-256 hex digest of the canonical JSON without the output directory.
    std::string hash() const;

    void validate() const;
};

struct RunReport {
    std::string problem;
    SolverKind solver = SolverKind::Ncc;
    RunMode mode = RunMode::Practical;
    OuterRule outer = OuterRule::ProjectedGradient;
    double eps = 0.0;

    std::optional<RateConstants> constants;
    ConstantEstimates estimates;
    LipschitzEstimate lipschitz;

    std::size_t K = 0;
    std::size_t T = 0;
    std::size_t N = 0;
    double lambda = 0.0;
    double eta = 0.0;

    Trajectory trajectory;
    IterationRecord best;
    std::size_t iterations = 0;
    std::int64_t wall_time_ns = 0;
    bool verdict = false;

    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
    std::string trajectory_path;
    std::string report_path;

    std::string to_json() const;
};

/// Builds the problem, estimates constants, dispatches to solve_pl or solve_ncc, and
/// streams trajectory.csv / writes report.json into config.out_dir when set. Solver
/// errors are rethrown with the run's context after the partial trajectory is flushed.
RunReport run(const RunConfig &config);

/// CSV header of trajectory files.
extern const char *const trajectory_csv_header;

struct SuiteEntry {
    std::string name;
    std::optional<RunReport> report;
    std::string error;
};

struct SuiteResult {
    std::vector<SuiteEntry> entries;
    std::string summary_path;
};

/// Runs every config of a suite file on up to `threads` worker threads. Each run writes
/// into its own directory under the suite's output directory.
/// Suite format: {"out_dir": "...", "threads": n, "runs": [{"name": "...", ...config}, ...]}.
SuiteResult run_suite(const std::string &path, std::optional<std::size_t> threads = std::nullopt);

std::string to_string(SolverKind kind);
std::string to_string(RunMode mode);
std::string to_string(OuterRule rule);

} // namespace minimax
