#include <minimax/fair.hpp>
#include <minimax/geometry.hpp>
#include <minimax/measures.hpp>
#include <minimax/ncc.hpp>
#include <minimax/pl_gda.hpp>
#include <minimax/problems.hpp>

#include <benchmark/benchmark.h>

#include <random>

using minimax::Vector;

namespace {

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = normal(rng);
    return v;
}

void BM_ProjectSimplex(benchmark::State &state) {
    const Vector x = random_vector(state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::project_simplex(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectSimplex)->RangeMultiplier(8)->Range(8, 4096)->Complexity();

void BM_SimplexInnerArgmax(benchmark::State &state) {
    const Vector l = random_vector(state.range(0), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::simplex_inner_argmax(l, 0.1));
}
BENCHMARK(BM_SimplexInnerArgmax)->Arg(3)->Arg(64)->Arg(1024);

void BM_LinearMinLocalBox(benchmark::State &state) {
    const auto n = state.range(0);
    const auto set = minimax::FeasibleSet::box(Vector::Constant(n, -1), Vector::Constant(n, 1));
    const Vector center = Vector::Constant(n, 0.9);
    const Vector g = random_vector(n, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::linear_min_local(set, center, g));
}
BENCHMARK(BM_LinearMinLocalBox)->Arg(2)->Arg(8)->Arg(32);

void BM_MeasureFairProblem(benchmark::State &state) {
    const auto model = minimax::synth_fair_dataset(0, static_cast<std::size_t>(state.range(0)));
    const auto p = minimax::fair_classification_problem(model, 0.1);
    const Vector theta = Vector::Constant(p.theta_dim(), 0.1);
    const Vector alpha = Vector::Constant(3, 1.0 / 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::measure(p, theta, alpha));
}
BENCHMARK(BM_MeasureFairProblem)->Arg(50)->Arg(200);

void BM_ApgaAbsValue(benchmark::State &state) {
    const auto reg = minimax::regularize(minimax::abs_value_game(), 0.0125, Vector::Constant(1, 0.5));
    const auto K = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::apga(reg, Vector::Constant(1, 0.3), Vector::Constant(1, 0.5), 80.0, 4, K));
}
BENCHMARK(BM_ApgaAbsValue)->Arg(16)->Arg(256);

void BM_SolvePlHyperplane(benchmark::State &state) {
    const auto p = minimax::pl_hyperplane_game((Vector(2) << 1, 1).finished());
    auto config = minimax::PlConfig::defaults(p, 1e-3, 1, static_cast<std::size_t>(state.range(0)));
    config.theta0 = Vector::Constant(1, 0.8);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::solve_pl(p, config));
}
BENCHMARK(BM_SolvePlHyperplane)->Arg(100)->Arg(1000);

void BM_SolveNccAbsValue(benchmark::State &state) {
    const auto p = minimax::abs_value_game();
    auto config = minimax::NccConfig::defaults(p, 0.05, 0, static_cast<std::size_t>(state.range(0)));
    config.theta0 = Vector::Constant(1, 0.8);
    config.check_concavity = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(minimax::solve_ncc(p, config));
}
BENCHMARK(BM_SolveNccAbsValue)->Arg(100)->Arg(1000);

} // namespace
BENCHMARK_MAIN();
