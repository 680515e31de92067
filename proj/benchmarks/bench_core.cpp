#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "lppcond/kernels.hpp"
#include "lppcond/lattice.hpp"
#include "lppcond/series.hpp"

using namespace lppcond;

namespace {

void BM_LatticeFill(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        LatticeField f = sample_field(n, n, 42);
        benchmark::DoNotOptimize(f.lp.back());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_LatticeFill)->Arg(24)->Arg(64)->Arg(256);

void BM_CauchyDet(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<cplx> r(n), s(n);
    for (int i = 0; i < n; ++i) {
        r[i] = cplx(-1.0, 0.0) + 0.3 * std::exp(cplx(0.0, 0.7 * i + 0.1));
        s[i] = 0.4 * std::exp(cplx(0.0, 0.9 * i + 0.4));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(cauchy_det(r.data(), s.data(), n));
    }
}
BENCHMARK(BM_CauchyDet)->Arg(2)->Arg(4)->Arg(8);

void BM_OnePointDensity(benchmark::State& state) {
    QuadSettings qs;
    qs.n_max = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(density_and_tail(3, 3, 9.0, qs).density);
    }
}
BENCHMARK(BM_OnePointDensity);

void BM_TwoPointTerm(benchmark::State& state) {
    // 4-dimensional tensor quadrature of the merged two-point integral.
    const ModelParams p = make_params(1, 1, 5);
    const RegionQuery q{0.5, 0.35, 0.6, 0.55};
    const ObservationPlan plan = scaled_plan(p, q, 0.0, 0.0, 8.0);
    QuadSettings qs;
    qs.q_override = static_cast<int>(state.range(0));
    qs.radii_mode = RadiiMode::Steepest;
    for (auto _ : state) {
        benchmark::DoNotOptimize(leading_integral(plan, qs).real());
    }
}
BENCHMARK(BM_TwoPointTerm)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
