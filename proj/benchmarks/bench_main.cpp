#include <benchmark/benchmark.h>

#include <memory>

#include "tscv/calculus.hpp"
#include "tscv/epiderivative.hpp"
#include "tscv/lagrangian.hpp"
#include "tscv/variational.hpp"

using namespace tscv;

namespace {

Problem classical(double h) {
    return Problem(TimeScale::interval(0.0, 1.0), 1.0, Lagrangian::parse("v^2 + y^2"), 0.0, 1.0, h);
}

void BM_Solve(benchmark::State& state) {
    const auto P = classical(1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(P));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_SolveIso(benchmark::State& state) {
    const IsoProblem IP(classical(1.0 / static_cast<double>(state.range(0))), Lagrangian::parse("y"), 1.0, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_iso(IP));
    }
}
BENCHMARK(BM_SolveIso)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Residual(benchmark::State& state) {
    const auto P = classical(1.0 / static_cast<double>(state.range(0)));
    const auto y = GridFunction::sample(P.grid(), [](double t) { return t * t; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(el_residual(P, y));
    }
}
BENCHMARK(BM_Residual)->Arg(1000)->Arg(10000);

void BM_DeltaDeriv(benchmark::State& state) {
    const auto g = std::make_shared<const SampleGrid>(
        TimeScale::interval(0.0, 1.0).discretize(1.0 / static_cast<double>(state.range(0))));
    const auto f = GridFunction::sample(g, [](double t) { return t * t; });
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_deriv(f));
    }
}
BENCHMARK(BM_DeltaDeriv)->Arg(1000)->Arg(100000);

void BM_Epiderivative(benchmark::State& state) {
    const auto g = std::make_shared<const SampleGrid>(TimeScale::interval(0.0, 1.0).discretize(1e-4));
    const auto fbar = extend(GridFunction::sample(g, [](double t) { return t * t; }));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epiderivative_closed(fbar, t, 1.0));
        t = t > 0.99 ? 0.0 : t + 0.0123;
    }
}
BENCHMARK(BM_Epiderivative);

void BM_ParseDifferentiate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(Lagrangian::parse("sin(t*v) + exp(y/3)*v^2 - log(2 + y^2)*t"));
    }
}
BENCHMARK(BM_ParseDifferentiate);

} // namespace

BENCHMARK_MAIN();
