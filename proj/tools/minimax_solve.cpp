// minimax-solve: run min-max solvers from JSON configs, check problem gradients, and
// execute benchmark suites.

#include <minimax/diagnostics.hpp>
#include <minimax/errors.hpp>
#include <minimax/harness.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

int exit_code(const std::exception &e) {
    if (dynamic_cast<const minimax::InvalidInputError *>(&e))
        return 2;
    if (dynamic_cast<const minimax::NumericError *>(&e))
        return 3;
    if (dynamic_cast<const minimax::ConfigurationError *>(&e))
        return 4;
    return 1;
}

void print_report(const minimax::RunReport &r) {
    std::printf("problem      %s (%s, %s", r.problem.c_str(), minimax::to_string(r.solver).c_str(),
                minimax::to_string(r.mode).c_str());
    if (r.solver == minimax::SolverKind::Ncc)
        std::printf(", outer %s", minimax::to_string(r.outer).c_str());
    std::printf(")\n");
    std::printf("parameters   K=%zu T=%zu", r.K, r.T);
    if (r.solver == minimax::SolverKind::Ncc)
        std::printf(" N=%zu lambda=%.6g", r.N, r.lambda);
    std::printf(" eta=%.6g\n", r.eta);
    std::printf("iterations   %zu (%zu records)\n", r.iterations, r.trajectory.size());
    std::printf("best         iter %zu  X=%.3e  Y=%.3e  f=%.6g\n", r.best.iter, r.best.x_measure,
                r.best.y_measure, r.best.f_value);
    std::printf("verdict      eps-FNE at eps=%g: %s\n", r.eps, r.verdict ? "yes" : "no");
    std::printf("wall time    %.3f ms\n", static_cast<double>(r.wall_time_ns) * 1e-6);
    std::printf("config hash  %s\n", r.config_hash.c_str());
    for (const auto &w : r.warnings)
        std::printf("warning      %s\n", w.c_str());
    if (!r.report_path.empty())
        std::printf("wrote        %s, %s\n", r.trajectory_path.c_str(), r.report_path.c_str());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"First-order solvers for smooth min-max games"};
    app.require_subcommand(1);

    // solve
    auto *solve = app.add_subcommand("solve", "Run one solver configuration");
    std::string config_path;
    std::optional<double> eps, lambda, eta;
    std::optional<std::string> solver, outer, mode, out_dir;
    std::optional<std::size_t> K, T, N, stride;
    std::optional<std::uint64_t> seed;
    bool timing = false;
    solve->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    solve->add_option("--eps", eps, "Target accuracy");
    solve->add_option("--solver", solver, "pl or ncc")->check(CLI::IsMember({"pl", "ncc"}));
    solve->add_option("--outer", outer, "Outer rule for ncc: pgd or fw")->check(CLI::IsMember({"pgd", "fw"}));
    solve->add_option("--mode", mode, "theory or practical")->check(CLI::IsMember({"theory", "practical"}));
    solve->add_option("--out", out_dir, "Output directory for trajectory.csv and report.json");
    solve->add_option("--K", K, "Inner iterations");
    solve->add_option("--T", T, "Outer iterations");
    solve->add_option("--N", N, "Restart period (ncc)");
    solve->add_option("--lambda", lambda, "Regularization (ncc)");
    solve->add_option("--eta", eta, "Inner step size");
    solve->add_option("--seed", seed, "Seed for sampling and data synthesis");
    solve->add_option("--stride", stride, "Measure every n-th outer iteration");
    solve->add_flag("--timing", timing, "Write wall-clock timings to the trajectory");

    // check-grad
    auto *check = app.add_subcommand("check-grad", "Finite-difference gradient and Lipschitz checks");
    std::string problem_name;
    std::uint64_t check_seed = 0;
    std::size_t points = 20;
    double tol = 1e-5;
    check->add_option("--problem", problem_name, "Built-in problem name")->required();
    check->add_option("--seed", check_seed, "Sampling seed");
    check->add_option("--points", points, "Number of random feasible points");
    check->add_option("--tol", tol, "Largest accepted relative error");

    // bench
    auto *bench = app.add_subcommand("bench", "Run a suite of configurations");
    std::string suite_path;
    std::optional<std::size_t> threads;
    bench->add_option("--suite", suite_path, "Suite JSON file")->required()->check(CLI::ExistingFile);
    bench->add_option("--threads", threads, "Worker threads (overrides the suite)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            auto config = minimax::RunConfig::load(config_path);
            if (eps)
                config.eps = *eps;
            if (solver)
                config.solver = *solver == "pl" ? minimax::SolverKind::Pl : minimax::SolverKind::Ncc;
            if (outer)
                config.outer = *outer == "fw" ? minimax::OuterRule::FrankWolfe : minimax::OuterRule::ProjectedGradient;
            if (mode)
                config.mode = *mode == "theory" ? minimax::RunMode::Theory : minimax::RunMode::Practical;
            if (out_dir)
                config.out_dir = *out_dir;
            if (K)
                config.K = K;
            if (T)
                config.T = T;
            if (N)
                config.N = N;
            if (lambda)
                config.lambda = lambda;
            if (eta)
                config.eta = eta;
            if (seed)
                config.seed = *seed;
            if (stride)
                config.measure_stride = *stride;
            if (timing)
                config.timing = true;
            print_report(minimax::run(config));
            return 0;
        }
        if (*check) {
            const auto built = minimax::make_problem(problem_name, minimax::ProblemParams{}, check_seed);
            const auto grad = minimax::check_gradients(built.oracle, points, check_seed);
            const auto lip = minimax::estimate_lipschitz(built.oracle, 200, check_seed);
            std::printf("problem %s, %zu points\n", built.oracle.name.c_str(), grad.points);
            std::printf("grad_theta  max rel error %.3e\n", grad.theta_error);
            std::printf("grad_alpha  max rel error %.3e\n", grad.alpha_error);
            std::printf("l11 declared %.6g sampled %.6g\n", built.oracle.l11, lip.l11);
            std::printf("l12 declared %.6g sampled %.6g\n", built.oracle.l12, lip.l12);
            std::printf("l22 declared %.6g sampled %.6g\n", built.oracle.l22, lip.l22);
            for (const auto &w : lip.warnings)
                std::printf("warning %s\n", w.c_str());
            const bool ok = grad.worst() <= tol;
            std::printf("%s (tolerance %.1e)\n", ok ? "PASS" : "FAIL", tol);
            return ok ? 0 : 5;
        }
        if (*bench) {
            const auto result = minimax::run_suite(suite_path, threads);
            int failures = 0;
            for (const auto &e : result.entries) {
                if (e.report) {
                    std::printf("%-28s verdict=%-3s iters=%-7zu X=%.3e Y=%.3e %.1f ms\n", e.name.c_str(),
                                e.report->verdict ? "yes" : "no", e.report->iterations,
                                e.report->best.x_measure, e.report->best.y_measure,
                                static_cast<double>(e.report->wall_time_ns) * 1e-6);
                } else {
                    ++failures;
                    std::printf("%-28s error: %s\n", e.name.c_str(), e.error.c_str());
                }
            }
            std::printf("summary: %s\n", result.summary_path.c_str());
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception &e) {
        std::cerr << "minimax-solve: " << e.what() << '\n';
        return exit_code(e);
    }
    return 0;
}
