// Microbenchmarks for the hot paths: matrix enumeration, lattice series,
// field evaluation, kernel quadrature, Monte Carlo integration and walk
// sampling.

#include <benchmark/benchmark.h>

#include <complex>

#include "mprange/feynman.hpp"
#include "mprange/graph_enum.hpp"
#include "mprange/lattice_green.hpp"
#include "mprange/moments.hpp"
#include "mprange/walk_oracle.hpp"

namespace {

void BM_EnumerateBalanced(benchmark::State& state) {
    const int r = (int)state.range(0);
    const std::vector<int> h(r, 2);
    for (auto _ : state) {
        auto v = mpr::enumerate_balanced(r, h);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_EnumerateBalanced)->Arg(3)->Arg(4)->Arg(5);

void BM_HSeries(benchmark::State& state) {
    for (auto _ : state) {
        auto s = mpr::h_series({0, 0, 0}, 2, (int)state.range(0));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_HSeries)->Arg(20)->Arg(40);

void BM_HEval(benchmark::State& state) {
    const std::complex<double> z(0.2, 0.05);
    for (auto _ : state) {
        auto v = mpr::h_eval({1, 0, 0}, 2, z, 1e-10);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_HEval);

void BM_DeltaR(benchmark::State& state) {
    const mpr::PointConfig Y({{0, 0}, {1, 0}, {0, 1}, {2, 1}});
    const std::complex<double> z(0.18, 0.04);
    for (auto _ : state) {
        auto d = mpr::delta_r(Y, z, 1e-8);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_DeltaR);

void BM_RadialQuadrature(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(mpr::radial_tK0_integral((int)state.range(0)));
}
BENCHMARK(BM_RadialQuadrature)->Arg(2)->Arg(4);

void BM_McIntegral(benchmark::State& state) {
    const auto mats = mpr::enumerate_balanced(3, {2, 2, 2});
    for (auto _ : state) {
        auto v = mpr::integral_I(mats[0], state.range(0), 1);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McIntegral)->Arg(10000)->Arg(100000);

void BM_MomentFull(benchmark::State& state) {
    for (auto _ : state) {
        auto e = mpr::moment_full(mpr::WalkClass::closed, {1, 1}, 6);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_MomentFull);

void BM_McClosedWalks(benchmark::State& state) {
    const int n = (int)state.range(0);
    for (auto _ : state) {
        auto st = mpr::mc_closed(n, {1, 6400}, 3);
        benchmark::DoNotOptimize(st);
    }
    state.SetItemsProcessed(state.iterations() * 6400LL * 2 * n);
}
BENCHMARK(BM_McClosedWalks)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
