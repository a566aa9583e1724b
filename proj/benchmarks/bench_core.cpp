// bench_core.cpp — Timings for the hot paths: master-equation wait, thermal
// series, pi/2 root finding.

#include "ramsey/jaynes_cummings.hpp"
#include "ramsey/open_system.hpp"
#include "ramsey/thermal_series.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace ramsey;

void BM_EvolveMaster(benchmark::State& state) {
    const double nbar = static_cast<double>(state.range(0)) / 10.0;
    const TruncationConfig trunc = truncation_for_bath(nbar);
    JointVector psi = JointVector::zero(trunc.n_max);
    psi.at(Level::e, 0) = 1.0 / std::sqrt(2.0);
    psi.at(Level::g, 1) = 1.0 / std::sqrt(2.0);
    const JointDensity rho = projector(psi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_master(rho, 0.1, ReservoirParams{1.0, nbar}));
    }
    state.SetLabel("n_max=" + std::to_string(trunc.n_max));
}
BENCHMARK(BM_EvolveMaster)->Arg(0)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_ThermalVisibility(benchmark::State& state) {
    const double T = static_cast<double>(state.range(0)) / 1000.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(thermal_visibility(T, 0.7));
    }
}
BENCHMARK(BM_ThermalVisibility)->Arg(8)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_SolvePiHalf(benchmark::State& state) {
    const double n = static_cast<double>(state.range(0));
    const TruncationConfig trunc = truncation_for_coherent(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_pi_half_time(cplx{std::sqrt(n), 0.0}, JCParams{}, trunc));
    }
}
BENCHMARK(BM_SolvePiHalf)->Arg(1)->Arg(20)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
