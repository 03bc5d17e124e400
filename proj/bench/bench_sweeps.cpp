// Benchmarks for the sweep kernels, comparing the OpenMP path against the
// serial reference. Thread count follows OMP_NUM_THREADS / HYPORATE_THREADS.

#include <benchmark/benchmark.h>

#include "hyporate/decay_bounds.hpp"
#include "hyporate/gt_sim.hpp"
#include "hyporate/modal_rates.hpp"
#include "hyporate/numerics.hpp"
#include "hyporate/spectral_lyapunov.hpp"

using namespace hyporate;

namespace {

void bm_rate_curve(benchmark::State& state, Exec exec) {
    const auto grid = num::log_grid(1e-2, 1e2, 64);
    for (auto _ : state) {
        const RateCurve curve = rate_curve(RateVariant::mode_opt, grid, 1.0, exec);
        benchmark::DoNotOptimize(curve.points.data());
    }
}

void bm_certify_sweep(benchmark::State& state, Exec exec) {
    GTSystem sys{4.0, GTSystem::Domain::torus};
    for (auto _ : state) {
        const auto reports = strategy_mode_reports(sys, 2, 256, {}, exec);
        benchmark::DoNotOptimize(reports.data());
    }
}

void bm_torus_trajectory(benchmark::State& state, Exec exec) {
    const TorusField y0 = TorusField::random(128, 99);
    const auto times = num::geometric_times(1e-2, 100.0, 100);
    for (auto _ : state) {
        const Trajectory traj = simulate_torus(y0, 1.0, times, exec);
        benchmark::DoNotOptimize(traj.norm_sq.data());
    }
}

void bm_line_evolve(benchmark::State& state, Exec exec) {
    const LineField y0 = LineField::gaussian();
    for (auto _ : state) {
        const LineField yt = evolve_line(y0, 1.0, 10.0, exec);
        benchmark::DoNotOptimize(yt.samples.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_rate_curve, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_rate_curve, openmp, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_certify_sweep, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_certify_sweep, openmp, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_torus_trajectory, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_torus_trajectory, openmp, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_line_evolve, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_line_evolve, openmp, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
