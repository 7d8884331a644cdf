// Microbenchmarks for the hot paths: one hyperbolic+damping step, the
// similarity-profile shooting solve, closed-form forcing evaluation, and
// pointwise heat-profile evaluation.

#include <benchmark/benchmark.h>

#include <cmath>

#include "psdamp/correction.hpp"
#include "psdamp/diffusion_wave.hpp"
#include "psdamp/forcing.hpp"
#include "psdamp/models.hpp"
#include "psdamp/similarity.hpp"
#include "psdamp/solver.hpp"

using namespace psdamp;

namespace {

FlowState hump_state(const Grid1D& grid) {
    FlowState state;
    state.t = 0.0;
    state.v.resize(grid.n_cells());
    state.u.assign(grid.n_cells(), 0.0);
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        const double x = grid.center(i);
        state.v[i] = 1.0 + 0.05 * std::exp(-x * x / 25.0);
    }
    return state;
}

void BM_solver_step(benchmark::State& bench) {
    const std::size_t n = std::size_t(bench.range(0));
    const Grid1D grid(200.0, n);
    const PressureLaw law(1.0, 2.0);
    const DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    Stepper stepper(law, field, grid, EndStates{}, SolverConfig{});
    FlowState state = hump_state(grid);
    for (auto _ : bench) {
        stepper.step(state, 1.0);
        benchmark::DoNotOptimize(state.v.data());
    }
    bench.SetItemsProcessed(std::int64_t(bench.iterations()) * std::int64_t(n));
}

void BM_similarity_solve(benchmark::State& bench) {
    const std::size_t nodes = std::size_t(bench.range(0));
    const PressureLaw law(1.0, 2.0);
    const EndStates ends{1.0, 1.1, 0.05, 0.05};
    for (auto _ : bench) {
        SimilarityProfile prof = similarity_solve(law, 1.0, ends, 14.0, nodes, 1e-8);
        benchmark::DoNotOptimize(prof.table_V().data());
    }
}

void BM_forcing_const(benchmark::State& bench) {
    const std::size_t n = std::size_t(bench.range(0));
    const Grid1D grid(200.0, n);
    const PressureLaw law(1.0, 2.0);
    const DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    const EndStates ends{1.0, 1.0, 0.05, 0.05};
    const DiffusionWave wave(1.0, mu_const(law, 1.0, 1.0), 0.18);
    const CorrectionFunction corr(Mollifier(1.0, 0.0), ends, field);
    for (auto _ : bench) {
        ForcingF f = forcing_F(5.0, grid, wave, corr, law, field);
        benchmark::DoNotOptimize(f.F.data());
    }
    bench.SetItemsProcessed(std::int64_t(bench.iterations()) * std::int64_t(n));
}

void BM_forcing_similarity(benchmark::State& bench) {
    const std::size_t n = std::size_t(bench.range(0));
    const Grid1D grid(200.0, n);
    const PressureLaw law(1.0, 2.0);
    const DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    const EndStates ends{1.0, 1.1, 0.05, 0.05};
    const SimilarityProfile prof = similarity_solve(law, 1.0, ends, 14.0, 2048, 1e-8);
    const CorrectionFunction corr(Mollifier(1.0, 0.0), ends, field);
    for (auto _ : bench) {
        ForcingG g = forcing_G(5.0, grid, prof, corr, law, field, 1.0);
        benchmark::DoNotOptimize(g.G.data());
    }
    bench.SetItemsProcessed(std::int64_t(bench.iterations()) * std::int64_t(n));
}

void BM_wave_eval(benchmark::State& bench) {
    const PressureLaw law(1.0, 2.0);
    const DiffusionWave wave(1.0, mu_const(law, 1.0, 1.0), 0.18);
    double x = -20.0;
    for (auto _ : bench) {
        const double v = wave.eval(7.0, x, WaveQuantity::V);
        const double u = wave.eval(7.0, x, WaveQuantity::U);
        benchmark::DoNotOptimize(v);
        benchmark::DoNotOptimize(u);
        x = x > 20.0 ? -20.0 : x + 0.01;
    }
}

BENCHMARK(BM_solver_step)->Arg(512)->Arg(2048)->Arg(8192);
BENCHMARK(BM_similarity_solve)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_forcing_const)->Arg(2048);
BENCHMARK(BM_forcing_similarity)->Arg(2048);
BENCHMARK(BM_wave_eval);

} // namespace

BENCHMARK_MAIN();
