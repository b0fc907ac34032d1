#include <benchmark/benchmark.h>

#include "sweep/critical_speeds.hpp"
#include "sweep/drifting_spiral.hpp"
#include "sweep/improved_spiral.hpp"
#include "sweep/wavefront_oracle.hpp"

namespace {

const sweep::Scenario kRef{100.0, 10.0, 1.0};

void BM_ImprovedCriticalSolve(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::improved_spiral_critical_speed(kRef));
    }
}
BENCHMARK(BM_ImprovedCriticalSolve);

void BM_DriftingSchedule(benchmark::State& state) {
    const double Vs = sweep::drifting_spiral_critical_speed(kRef) + 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::drifting::schedule(kRef, Vs));
    }
}
BENCHMARK(BM_DriftingSchedule);

void BM_ImprovedSchedule(benchmark::State& state) {
    const double Vs = sweep::improved_spiral_critical_speed(kRef).root + 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep::improved::schedule(kRef, Vs));
    }
}
BENCHMARK(BM_ImprovedSchedule);

void BM_ConfinementCheck(benchmark::State& state) {
    const double Vs = sweep::drifting_spiral_critical_speed(kRef) + 1.0;
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sweep::oracle::verify_confinement_inequality(kRef, Vs, n));
    }
}
BENCHMARK(BM_ConfinementCheck)->Arg(50)->Arg(100)->Arg(200);

void BM_GridDilate(benchmark::State& state) {
    for (auto _ : state) {
        state.PauseTiming();
        sweep::oracle::RegionGrid g = sweep::oracle::RegionGrid::make(
            {-110.0, -110.0}, {110.0, 110.0}, 0.55, {0.0, 0.0}, kRef.R0);
        state.ResumeTiming();
        g.dilate(2.0);
        benchmark::DoNotOptimize(g.occupied);
    }
}
BENCHMARK(BM_GridDilate);

}  // namespace

BENCHMARK_MAIN();
