#include <benchmark/benchmark.h>

#include "kmlab/dynamics.hpp"
#include "kmlab/estimates.hpp"
#include "kmlab/spectral.hpp"

using namespace kmlab;

static void BM_TransformRoundtrip(benchmark::State& state) {
    const GridSpec g(static_cast<int>(state.range(0)), 32.0 * M_PI);
    const RealField f = random_band_limited_field(1, g.n_points / 4, 1.0, g);
    for (auto _ : state)
        benchmark::DoNotOptimize(inverse_transform(forward_transform(f)));
}
BENCHMARK(BM_TransformRoundtrip)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_DuhamelApply(benchmark::State& state) {
    const GridSpec g(512, 32.0 * M_PI);
    const int n_t = static_cast<int>(state.range(0));
    KmParams params;
    params.mu = 0.5;
    Trajectory traj = zero_trajectory(g, params, SobolevIndex(1.0), 0.1, n_t);
    const RealField phi = random_band_limited_field(1, 16, 0.01, g);
    const RealField psi = random_band_limited_field(2, 16, 0.01, g);
    for (auto& st : traj.states) {
        st.u = phi;
        st.v = psi;
    }
    for (auto _ : state) benchmark::DoNotOptimize(duhamel_apply(traj, phi, psi));
}
BENCHMARK(BM_DuhamelApply)->Arg(50)->Arg(100)->Arg(200);

static void BM_BilinearSamples(benchmark::State& state) {
    const GridSpec g(512, 32.0 * M_PI);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            bilinear_samples(1, static_cast<int>(state.range(0)), SobolevIndex(1.0), 0.1, 50, g));
}
BENCHMARK(BM_BilinearSamples)->Arg(5)->Arg(20);

BENCHMARK_MAIN();
