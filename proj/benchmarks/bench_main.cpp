#include <pfqed/hydrogen.hpp>
#include <pfqed/shifts.hpp>
#include <pfqed/spectral.hpp>

#include <benchmark/benchmark.h>

#include <memory>

using namespace pfqed;

namespace {

Params ground_params()
{
    Params p;
    p.beta = 0.1;
    return p;
}

void BM_SFunction(benchmark::State& state)
{
    double const e = state.range(0) >= 0 ? static_cast<double>(state.range(0)) * 1e-3 : -0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s_function(e));
    }
}
BENCHMARK(BM_SFunction)->Arg(-1)->Arg(1)->Arg(1000);

void BM_Eigendecompose(benchmark::State& state)
{
    Params const p = ground_params();
    GridConfig cfg;
    cfg.n = static_cast<std::size_t>(state.range(0));
    auto grid = std::make_shared<RadialGrid const>(cfg);
    RadialOperator const op = build_radial_hamiltonian(1, p, grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigendecompose(op));
    }
}
BENCHMARK(BM_Eigendecompose)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TIntegrand(benchmark::State& state)
{
    Params const p = ground_params();
    RadialContext ctx(p, GridConfig{});
    HydrogenState const s = bound_state(1, 0, p, ctx.grid());
    TMode const mode = state.range(0) == 0 ? TMode::leading : TMode::resolvent;
    t_integrand(s, ctx, 0.01, mode, 4); // builds the cached operators
    for (auto _ : state) {
        benchmark::DoNotOptimize(t_integrand(s, ctx, 0.01, mode, 4));
    }
}
BENCHMARK(BM_TIntegrand)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_STerm(benchmark::State& state)
{
    Params const p = ground_params();
    RadialContext ctx(p, GridConfig{});
    HydrogenState const s = bound_state(1, 0, p, ctx.grid());
    GradientChannels const ch = gradient_channels(s, p);
    s_term(s, ch, ctx); // eigendecomposition happens once, outside the loop
    for (auto _ : state) {
        benchmark::DoNotOptimize(s_term(s, ch, ctx));
    }
}
BENCHMARK(BM_STerm)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
