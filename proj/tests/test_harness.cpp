#include <minimax/errors.hpp>
#include <minimax/harness.hpp>
#include <minimax/measures.hpp>
#include <minimax/pl_gda.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using minimax::RunConfig;
using minimax::RunMode;
using minimax::SolverKind;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);)
        out.push_back(line);
    return out;
}

RunConfig abs_value_config(const std::string &out) {
    auto c = RunConfig::from_json(R"({"problem": "abs_value", "solver": "ncc", "eps": 0.05, "T": 400,
                                      "theta0": [0.8], "stop_at_eps": false})");
    c.out_dir = out;
    return c;
}

} // namespace

TEST(ProblemRegistry, BuildsEveryProblem) {
    for (const auto &name : minimax::problem_names()) {
        const auto built = minimax::make_problem(name, minimax::ProblemParams{}, 0);
        EXPECT_NO_THROW(built.oracle.validate()) << name;
    }
    EXPECT_THROW(minimax::make_problem("nope", {}, 0), minimax::InvalidInputError);
}

TEST(RunConfig, ParsesAndRejectsUnknownKeys) {
    const auto c = RunConfig::from_json(R"({"problem": {"name": "pl_hyperplane", "a": [1, 2]},
        "solver": "pl", "mode": "theory", "eps": 0.1, "K": 3, "seed": 7})");
    EXPECT_EQ(c.problem, "pl_hyperplane");
    EXPECT_EQ(c.params.a, (std::vector<double>{1, 2}));
    EXPECT_EQ(c.solver, SolverKind::Pl);
    EXPECT_EQ(c.mode, RunMode::Theory);
    EXPECT_EQ(*c.K, 3u);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_THROW(RunConfig::from_json(R"({"problem": "abs_value", "epsilon": 0.1})"), minimax::InvalidInputError);
    EXPECT_THROW(RunConfig::from_json(R"({"solver": "sgd"})"), minimax::InvalidInputError);
    EXPECT_THROW(RunConfig::from_json(R"({"K": -1})"), minimax::InvalidInputError);
    EXPECT_THROW(RunConfig::from_json("{not json"), minimax::InvalidInputError);
    EXPECT_THROW(RunConfig::load("/nonexistent/config.json"), minimax::InvalidInputError);
}

TEST(RunConfig, CanonicalJsonRoundTrip) {
    const auto c = RunConfig::from_json(R"({"problem": "fair", "solver": "ncc", "outer": "fw", "eps": 0.2,
                                             "lambda": 0.3, "theta0": [0, 0, 0, 0, 0, 0, 0, 0, 0]})");
    const auto back = RunConfig::from_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
    EXPECT_EQ(back.hash(), c.hash());
}

TEST(RunConfig, HashIgnoresOutputDirectoryOnly) {
    auto a = abs_value_config("/tmp/a");
    auto b = abs_value_config("/tmp/b");
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_EQ(a.hash().size(), 64u);
    b.seed = 1;
    EXPECT_NE(a.hash(), b.hash());
}

TEST(RunConfig, TheoryModeRejectsEpsOutsideUnitInterval) {
    auto c = RunConfig::from_json(R"({"problem": "abs_value", "mode": "theory", "eps": 2})");
    EXPECT_THROW(c.validate(), minimax::InvalidInputError);
    EXPECT_THROW(minimax::run(c), minimax::InvalidInputError);
    c.eps = 0.5;
    EXPECT_NO_THROW(c.validate());
}

TEST(Run, SameConfigGivesIdenticalTrajectory) {
    const std::string d1 = oracle::scratch_dir("run_det_1"), d2 = oracle::scratch_dir("run_det_2");
    minimax::run(abs_value_config(d1));
    minimax::run(abs_value_config(d2));
    const std::string a = slurp(d1 + "/trajectory.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(d2 + "/trajectory.csv"));
}

TEST(Run, CsvRowsMatchStride) {
    const std::string dir = oracle::scratch_dir("run_stride");
    auto c = abs_value_config(dir);
    c.measure_stride = 7;
    const auto report = minimax::run(c);
    const auto rows = lines(slurp(dir + "/trajectory.csv"));
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows[0], minimax::trajectory_csv_header);
    EXPECT_EQ(rows[0], "iter,x_measure,y_measure,f_value,g_lambda_value,step_norm,wall_ns");
    EXPECT_EQ(report.iterations, 400u);
    EXPECT_EQ(rows.size(), 1 + (400 + 6) / 7);
    EXPECT_EQ(report.trajectory.size(), rows.size() - 1);
}

TEST(Run, EarlyStopRowCount) {
    const std::string dir = oracle::scratch_dir("run_early");
    auto c = abs_value_config(dir);
    c.stop_at_eps = true;
    c.T = 10000;
    const auto report = minimax::run(c);
    EXPECT_LT(report.iterations, 10000u);
    EXPECT_EQ(lines(slurp(dir + "/trajectory.csv")).size(), report.iterations + 1);
    EXPECT_TRUE(report.verdict);
}

TEST(Run, VerdictMatchesBestIterate) {
    for (const auto *text : {R"({"problem": "abs_value", "eps": 0.05, "T": 50, "theta0": [0.8]})",
                             R"({"problem": "abs_value", "eps": 0.05, "T": 2000, "theta0": [0.8]})",
                             R"({"problem": "pl_hyperplane", "solver": "pl", "eps": 0.001, "T": 100,
                                 "theta0": [0.5], "alpha0": [2, 1]})"}) {
        const auto c = RunConfig::from_json(text);
        const auto report = minimax::run(c);
        const auto built = minimax::make_problem(c.problem, c.params, c.seed);
        const auto m = minimax::measure(built.oracle, report.best.theta, report.best.alpha);
        EXPECT_EQ(report.verdict, minimax::is_eps_fne(m, c.eps)) << text;
        EXPECT_EQ(m.x_measure, report.best.x_measure);
    }
}

TEST(Run, ReportJsonFields) {
    const std::string dir = oracle::scratch_dir("run_report");
    const auto report = minimax::run(abs_value_config(dir));
    const auto j = nlohmann::json::parse(slurp(dir + "/report.json"));
    EXPECT_EQ(j["problem"], "abs_value");
    EXPECT_EQ(j["verdict"], report.verdict);
    EXPECT_EQ(j["config_hash"], report.config_hash);
    EXPECT_EQ(j["parameters"]["N"], report.N);
    EXPECT_EQ(j["best"]["x_measure"].get<double>(), report.best.x_measure);
    EXPECT_TRUE(j["constants"].is_object());
    EXPECT_DOUBLE_EQ(j["parameters"]["lambda"].get<double>(), 0.05 / 4); // R = max(0.5, 1)
}

TEST(Run, PlTheoryModeUsesFormulaCounts) {
    const auto c = RunConfig::from_json(R"({"problem": "pl_hyperplane", "solver": "pl", "mode": "theory",
                                             "eps": 0.5, "theta0": [0.5], "alpha0": [1, 1]})");
    const auto report = minimax::run(c);
    ASSERT_TRUE(report.constants.has_value());
    const auto counts = minimax::pl_iteration_counts(*report.constants, 0.5);
    EXPECT_EQ(report.K, counts.K);
    EXPECT_EQ(report.T, std::min<std::uint64_t>(counts.T, c.max_iterations));
    EXPECT_EQ(report.trajectory.size(), report.T); // theory mode runs the full budget
}

TEST(Run, SolverMismatchIsInvalidInput) {
    EXPECT_THROW(minimax::run(RunConfig::from_json(R"({"problem": "abs_value", "solver": "pl"})")),
                 minimax::InvalidInputError);
    EXPECT_THROW(minimax::run(RunConfig::from_json(R"({"problem": "coupled_quadratic", "solver": "ncc"})")),
                 minimax::InvalidInputError);
    EXPECT_THROW(minimax::run(RunConfig::from_json(R"({"problem": "abs_value", "theta0": [0, 0]})")),
                 minimax::InvalidInputError);
}

TEST(Run, NumericFailureFlushesPartialTrajectory) {
    // An inner step of 1 instead of 1/l22 = 1/4 overshoots by a factor of 3 every step.
    const std::string dir = oracle::scratch_dir("run_diverge");
    auto c = RunConfig::from_json(R"({"problem": "pl_hyperplane", "solver": "pl", "eps": 0.01, "T": 50,
                                      "eta": 1.0, "alpha0": [1, 0], "theta0": [0.9]})");
    c.out_dir = dir;
    fs::remove_all(dir);
    EXPECT_THROW(minimax::run(c), minimax::NumericError);
    const auto rows = lines(slurp(dir + "/trajectory.csv"));
    EXPECT_GE(rows.size(), 1u);
    const auto j = nlohmann::json::parse(slurp(dir + "/report.json"));
    EXPECT_TRUE(j.contains("error"));
}

TEST(Suite, RunsInParallelAndWritesSummary) {
    const std::string dir = oracle::scratch_dir("suite");
    fs::create_directories(dir);
    const std::string path = dir + "/suite.json";
    std::ofstream(path) << R"({"out_dir": ")" << dir << R"(/out", "threads": 3, "runs": [
        {"name": "a", "problem": "abs_value", "eps": 0.05, "T": 3000, "theta0": [0.5]},
        {"name": "b", "problem": "abs_value", "outer": "fw", "eps": 0.05, "T": 3000, "theta0": [-0.5]},
        {"name": "c", "problem": "pl_hyperplane", "solver": "pl", "eps": 0.001, "T": 100},
        {"name": "bad", "problem": "coupled_quadratic", "solver": "ncc"}]})";
    const auto result = minimax::run_suite(path);
    ASSERT_EQ(result.entries.size(), 4u);
    for (std::size_t i = 0; i < 3; ++i) {
        ASSERT_TRUE(result.entries[i].report.has_value()) << result.entries[i].error;
        EXPECT_TRUE(result.entries[i].report->verdict);
        EXPECT_TRUE(fs::exists(result.entries[i].report->trajectory_path));
    }
    EXPECT_FALSE(result.entries[3].report.has_value());
    EXPECT_FALSE(result.entries[3].error.empty());
    const auto summary = nlohmann::json::parse(slurp(result.summary_path));
    ASSERT_TRUE(summary.is_array());
    EXPECT_EQ(summary.size(), 4u);

    // Same suite on one thread: identical trajectories.
    const auto serial = minimax::run_suite(path, 1);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(serial.entries[i].report->trajectory.size(), result.entries[i].report->trajectory.size());
}

TEST(Suite, RejectsMalformedSuites) {
    const std::string dir = oracle::scratch_dir("suite_bad");
    fs::create_directories(dir);
    std::ofstream(dir + "/a.json") << R"({"runs": {}})";
    EXPECT_THROW(minimax::run_suite(dir + "/a.json"), minimax::InvalidInputError);
    std::ofstream(dir + "/b.json") << R"({"runs": [], "extra": 1})";
    EXPECT_THROW(minimax::run_suite(dir + "/b.json"), minimax::InvalidInputError);
    std::ofstream(dir + "/c.json") << R"({"runs": [{"name": "x", "eps": "big"}]})";
    EXPECT_THROW(minimax::run_suite(dir + "/c.json"), minimax::InvalidInputError);
}
